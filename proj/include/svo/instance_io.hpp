#pragma once

#include "svo/instance.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace svo {

// Instance files are UTF-8 JSON. Every number is a string "p" or "p/q";
// readers accept any equivalent fraction, writers emit canonical lowest
// terms. Label order in the file is the label order of the instance.
namespace io_detail {

using Json = nlohmann::ordered_json;

inline Rational read_rational(const Json& j, const std::string& path) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    throw ParseError(path + ": expected a rational string");
}

inline Vec read_vec(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected an array");
    Vec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(read_rational(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

inline std::vector<Vec> read_vec_list(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected an array of points");
    std::vector<Vec> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(read_vec(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline Cone read_cone(const Json& j, std::size_t dim, const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    Cone c;
    c.dimension = dim;
    if (!j.contains("normals") || !j.contains("generators") || !j.contains("interior_witness"))
        throw ParseError(path + ": cone needs normals, generators and interior_witness");
    c.normals = read_vec_list(j.at("normals"), path + ".normals");
    c.generators = read_vec_list(j.at("generators"), path + ".generators");
    c.interior_witness = read_vec(j.at("interior_witness"), path + ".interior_witness");
    return c;
}

inline Json write_vec(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline Json write_vec_list(const std::vector<Vec>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(write_vec(v));
    return a;
}

inline Json write_cone(const Cone& c) {
    Json o = Json::object();
    o["normals"] = write_vec_list(c.normals);
    o["generators"] = write_vec_list(c.generators);
    o["interior_witness"] = write_vec(c.interior_witness);
    return o;
}

}  // namespace io_detail

inline Instance parse_instance(const std::string& text) {
    io_detail::Json j;
    try {
        j = io_detail::Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance file: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance file: expected a JSON object");
    for (const char* field : {"y_dim", "z_dim", "K", "C", "e", "mode", "labels"})
        if (!j.contains(field)) throw ParseError(std::string("instance file: missing field ") + field);

    Instance inst;
    if (!j.at("y_dim").is_number_unsigned()) throw ParseError("y_dim: expected a count");
    if (!j.at("z_dim").is_number_unsigned()) throw ParseError("z_dim: expected a count");
    inst.y_dim = j.at("y_dim").get<std::size_t>();
    inst.z_dim = j.at("z_dim").get<std::size_t>();
    inst.K = io_detail::read_cone(j.at("K"), inst.y_dim, "K");
    inst.C = io_detail::read_cone(j.at("C"), inst.z_dim, "C");
    inst.e = io_detail::read_vec(j.at("e"), "e");
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "discrete")
        inst.mode = EvalMode::Discrete;
    else if (mode == "convexified")
        inst.mode = EvalMode::Convexified;
    else
        throw ParseError("mode: expected discrete or convexified");
    if (!j.at("labels").is_object()) throw ParseError("labels: expected an object");
    for (const auto& [name, body] : j.at("labels").items()) {
        LabelImages L;
        L.name = name;
        const std::string path = "labels." + name;
        if (!body.is_object() || !body.contains("f") || !body.contains("g"))
            throw ParseError(path + ": expected an object with f and g");
        L.f = io_detail::read_vec_list(body.at("f"), path + ".f");
        L.g = io_detail::read_vec_list(body.at("g"), path + ".g");
        inst.labels.push_back(std::move(L));
    }
    validate_instance(inst);
    return inst;
}

inline std::string serialize_instance(const Instance& inst) {
    io_detail::Json j = io_detail::Json::object();
    j["y_dim"] = inst.y_dim;
    j["z_dim"] = inst.z_dim;
    j["K"] = io_detail::write_cone(inst.K);
    j["C"] = io_detail::write_cone(inst.C);
    j["e"] = io_detail::write_vec(inst.e);
    j["mode"] = inst.mode == EvalMode::Discrete ? "discrete" : "convexified";
    io_detail::Json labels = io_detail::Json::object();
    for (const auto& L : inst.labels) {
        io_detail::Json body = io_detail::Json::object();
        body["f"] = io_detail::write_vec_list(L.f);
        body["g"] = io_detail::write_vec_list(L.g);
        labels[L.name] = std::move(body);
    }
    j["labels"] = std::move(labels);
    return j.dump(2) + "\n";
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write instance file: " + path);
    out << serialize_instance(inst);
}

}  // namespace svo
