#include "boxplus/io.hpp"

#include <fstream>
#include <sstream>

namespace boxplus::io {

Rat json_to_rat(const Json& value) {
    if (value.is_string()) return parse_rat(value.get<std::string>());
    if (value.is_number_integer()) return Rat(value.get<long>());
    throw ParseError("expected a rational string or integer, got: " + value.dump());
}

Json rat_to_json(const Rat& value) {
    return format_rat(value);
}

Vec json_to_vec(const Json& value, std::optional<size_t> expect_dim) {
    if (!value.is_array()) throw ParseError("expected an array of coordinates");
    Vec out;
    out.reserve(value.size());
    for (const Json& coord : value) out.push_back(json_to_rat(coord));
    if (expect_dim && out.size() != *expect_dim)
        throw ParseError("expected " + std::to_string(*expect_dim) + " coordinates, got " +
                         std::to_string(out.size()));
    return out;
}

Json vec_to_json(const Vec& value) {
    Json out = Json::array();
    for (const Rat& v : value) out.push_back(rat_to_json(v));
    return out;
}

Json vec_to_approx_json(const Vec& value) {
    Json out = Json::array();
    for (const Rat& v : value) out.push_back(to_double(v));
    return out;
}

PointSetDocument parse_point_set(const Json& doc) {
    if (!doc.is_object()) throw ParseError("point set document must be an object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw ParseError("point set document needs an integer 'dim'");
    PointSetDocument out;
    long dim = doc["dim"].get<long>();
    if (dim < 1) throw ParseError("'dim' must be positive");
    out.dim = static_cast<size_t>(dim);
    if (!doc.contains("points") || !doc["points"].is_array())
        throw ParseError("point set document needs a 'points' array");
    for (const Json& pt : doc["points"]) out.points.push_back(json_to_vec(pt, out.dim));
    if (out.points.empty()) throw ParseError("point set document has no points");
    return out;
}

Json point_set_to_json(const PointSetDocument& doc) {
    Json out;
    out["dim"] = doc.dim;
    Json pts = Json::array();
    for (const Vec& pt : doc.points) pts.push_back(vec_to_json(pt));
    out["points"] = std::move(pts);
    return out;
}

MatrixDocument parse_matrix(const Json& doc) {
    if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array())
        throw ParseError("matrix document needs a 'matrix' array of rows");
    MatrixDocument out;
    for (const Json& row : doc["matrix"]) out.matrix.push_back(json_to_vec(row));
    if (out.matrix.empty()) throw ParseError("matrix document has an empty matrix");
    size_t n = out.matrix.size();
    for (const Vec& row : out.matrix)
        if (row.size() != n) throw ParseError("matrix must be square");
    if (doc.contains("rhs")) out.rhs = json_to_vec(doc["rhs"], n);
    return out;
}

Vec parse_point_arg(const std::string& text) {
    Vec out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) out.push_back(parse_rat(token));
    if (out.empty()) throw ParseError("empty point argument");
    return out;
}

std::vector<unsigned> parse_schedule_arg(const std::string& text) {
    std::vector<unsigned> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        Rat v = parse_rat(token);
        if (v < 0 || v.get_den() != 1) throw ParseError("schedule entries must be naturals");
        out.push_back(static_cast<unsigned>(v.get_num().get_ui()));
    }
    if (out.empty()) throw ParseError("empty p-schedule");
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw ParseError("p-schedule must be strictly increasing");
    return out;
}

Json schedule_to_json(const PSchedule& schedule) {
    Json out;
    out["ps"] = schedule.ps;
    out["tolerance"] = schedule.tolerance;
    out["precision_bits"] = schedule.precision_bits;
    return out;
}

Json convergence_report_to_json(const ConvergenceReport& report) {
    Json out;
    Json entries = Json::array();
    for (const auto& entry : report.entries) {
        Json e;
        e["p"] = entry.p;
        e["ok"] = entry.ok;
        if (entry.ok)
            e["value"] = entry.value;
        else
            e["error"] = entry.error;
        entries.push_back(std::move(e));
    }
    out["entries"] = std::move(entries);
    out["estimate"] = report.estimate;
    out["final_delta"] = report.final_delta;
    out["max_delta"] = report.max_delta;
    out["converged"] = report.converged;
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return doc;
}

}  // namespace boxplus::io
