#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "boxplus/phi_oracle.hpp"
#include "boxplus/rational.hpp"

namespace boxplus::io {

using Json = nlohmann::ordered_json;

// {"dim": n, "points": [["1","3","3"], ...]}; coordinates are "p/q" strings,
// integer strings, or plain JSON integers.
struct PointSetDocument {
    size_t dim = 0;
    std::vector<Vec> points;
};

// {"matrix": [[...], ...], "rhs": [...]} with the same coordinate forms.
struct MatrixDocument {
    Mat matrix;
    std::optional<Vec> rhs;
};

Rat json_to_rat(const Json& value);
Json rat_to_json(const Rat& value);

Vec json_to_vec(const Json& value, std::optional<size_t> expect_dim = std::nullopt);
Json vec_to_json(const Vec& value);
Json vec_to_approx_json(const Vec& value);

PointSetDocument parse_point_set(const Json& doc);
Json point_set_to_json(const PointSetDocument& doc);

MatrixDocument parse_matrix(const Json& doc);

// Comma-separated rational list, e.g. "1/2,-3,0".
Vec parse_point_arg(const std::string& text);
std::vector<unsigned> parse_schedule_arg(const std::string& text);

Json schedule_to_json(const PSchedule& schedule);
Json convergence_report_to_json(const ConvergenceReport& report);

Json load_json_file(const std::string& path);

}  // namespace boxplus::io
