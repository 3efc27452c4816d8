#include "hyperan/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "hyperan/errors.hpp"

namespace hyperan {

namespace {

using njson = nlohmann::json;

constexpr const char* kNormalizationNote =
    "crf carries no 1/2 factor; both local-conjugate forms include the 1/2";

std::string format_double(double value) {
    if (!std::isfinite(value)) {
        throw Error("report contains a non-finite value");
    }
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

// ---------------------------------------------------------------------------
// Deterministic JSON writer: insertion-ordered keys, %.17g floats.

class Json {
public:
    static Json null() { return Json(Type::null); }
    static Json boolean(bool v) {
        Json j(Type::boolean);
        j.bool_ = v;
        return j;
    }
    static Json integer(std::int64_t v) {
        Json j(Type::integer);
        j.int_ = v;
        return j;
    }
    static Json uinteger(std::uint64_t v) {
        Json j(Type::uinteger);
        j.uint_ = v;
        return j;
    }
    static Json number(double v) {
        Json j(Type::number);
        j.num_ = v;
        return j;
    }
    static Json string(std::string v) {
        Json j(Type::string);
        j.str_ = std::move(v);
        return j;
    }
    static Json array() { return Json(Type::array); }
    static Json object() { return Json(Type::object); }

    Json& add(const char* key, Json value) {
        members_.emplace_back(key, std::move(value));
        return *this;
    }
    Json& push(Json value) {
        items_.push_back(std::move(value));
        return *this;
    }

    std::string dump() const {
        std::string out;
        write(out, 0);
        out.push_back('\n');
        return out;
    }

private:
    enum class Type { null, boolean, integer, uinteger, number, string, array, object };

    explicit Json(Type type) : type_(type) {}

    bool scalar() const { return type_ != Type::array && type_ != Type::object; }

    static void write_string(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\r': out += "\\r"; break;
                case '\t': out += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int depth) const {
        const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
        const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
        switch (type_) {
            case Type::null: out += "null"; return;
            case Type::boolean: out += bool_ ? "true" : "false"; return;
            case Type::integer: out += std::to_string(int_); return;
            case Type::uinteger: out += std::to_string(uint_); return;
            case Type::number: out += format_double(num_); return;
            case Type::string: write_string(out, str_); return;
            case Type::array: {
                if (items_.empty()) {
                    out += "[]";
                    return;
                }
                bool flat = true;
                for (const auto& item : items_) {
                    flat = flat && item.scalar();
                }
                out.push_back('[');
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    if (flat) {
                        if (i > 0) {
                            out += ", ";
                        }
                    } else {
                        out += i > 0 ? ",\n" : "\n";
                        out += pad_in;
                    }
                    items_[i].write(out, depth + 1);
                }
                if (!flat) {
                    out.push_back('\n');
                    out += pad;
                }
                out.push_back(']');
                return;
            }
            case Type::object: {
                if (members_.empty()) {
                    out += "{}";
                    return;
                }
                out.push_back('{');
                for (std::size_t i = 0; i < members_.size(); ++i) {
                    out += i > 0 ? ",\n" : "\n";
                    out += pad_in;
                    write_string(out, members_[i].first);
                    out += ": ";
                    members_[i].second.write(out, depth + 1);
                }
                out.push_back('\n');
                out += pad;
                out.push_back('}');
                return;
            }
        }
    }

    Type type_;
    bool bool_ = false;
    std::int64_t int_ = 0;
    std::uint64_t uint_ = 0;
    double num_ = 0.0;
    std::string str_;
    std::vector<Json> items_;
    std::vector<std::pair<std::string, Json>> members_;
};

Json components_json(std::span<const double> components) {
    auto arr = Json::array();
    for (double c : components) {
        arr.push(Json::number(c));
    }
    return arr;
}

Json axis_range_json(const AxisRange& axis) {
    auto arr = Json::array();
    arr.push(Json::number(axis.lo));
    arr.push(Json::number(axis.hi));
    arr.push(Json::integer(axis.count));
    return arr;
}

Json grid_json(const GridSpec& grid) {
    auto node = Json::object();
    node.add("dim", Json::integer(grid.dim));
    auto axes = Json::array();
    for (const auto& axis : grid.axes) {
        axes.push(axis_range_json(axis));
    }
    node.add("axes", std::move(axes));
    node.add("exclude_axis_radius", Json::number(grid.axis_exclusion_radius));
    node.add("seed", Json::uinteger(grid.seed));
    node.add("jitter", Json::number(grid.jitter));
    if (grid.plane) {
        auto plane = Json::object();
        plane.add("iota", components_json(grid.plane->iota.components()));
        plane.add("t_range", axis_range_json(grid.plane->t_range));
        node.add("plane", std::move(plane));
    } else {
        node.add("plane", Json::null());
    }
    return node;
}

std::string canonical_axis_name(int axis) {
    switch (axis) {
        case 1: return "i";
        case 2: return "j";
        case 3: return "k";
        default: return "e" + std::to_string(axis);
    }
}

Json function_spec_json(const FunctionSpec& spec) {
    auto node = Json::object();
    switch (spec.kind()) {
        case FunctionSpec::Kind::right_poly: {
            node.add("type", Json::string("right_poly"));
            node.add("dim", Json::integer(spec.dim()));
            auto coeffs = Json::array();
            for (const auto& c : spec.right_poly().coeffs()) {
                coeffs.push(components_json(c.components()));
            }
            node.add("coeffs", std::move(coeffs));
            return node;
        }
        case FunctionSpec::Kind::plane_poly: {
            node.add("type", Json::string("plane_poly"));
            node.add("dim", Json::integer(spec.dim()));
            node.add("iota", components_json(spec.plane_poly().iota.components()));
            auto coeffs = Json::array();
            for (const auto& c : spec.plane_poly().coeffs) {
                coeffs.push(components_json(c.components()));
            }
            node.add("coeffs", std::move(coeffs));
            return node;
        }
        case FunctionSpec::Kind::canonical: {
            node.add("type", Json::string("canonical"));
            node.add("dim", Json::integer(spec.dim()));
            node.add("axis", Json::string(canonical_axis_name(spec.canonical().axis)));
            auto coeffs = Json::array();
            for (const auto& c : spec.canonical().coeffs) {
                auto pair = Json::array();
                pair.push(Json::number(c.real()));
                pair.push(Json::number(c.imag()));
                coeffs.push(std::move(pair));
            }
            node.add("coeffs", std::move(coeffs));
            return node;
        }
        case FunctionSpec::Kind::builtin: {
            node.add("type", Json::string("builtin"));
            node.add("name", Json::string(builtin_name(spec.builtin().name)));
            node.add("dim", Json::integer(spec.dim()));
            return node;
        }
    }
    throw ConfigError("function_spec_json: unknown kind");
}

// ---------------------------------------------------------------------------
// Function-spec parsing.

void reject_unknown_fields(const njson& obj, std::initializer_list<const char*> allowed,
                           const char* type_name) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            known = known || item.key() == key;
        }
        if (!known) {
            throw ParseError("unknown field \"" + item.key() + "\" in " + type_name + " spec");
        }
    }
}

double parse_number(const njson& value, const std::string& field) {
    if (!value.is_number()) {
        throw ParseError("field \"" + field + "\" must be a number");
    }
    return value.get<double>();
}

int parse_dim_field(const njson& obj, const char* type_name, std::optional<int> fallback) {
    if (!obj.contains("dim")) {
        if (fallback) {
            return *fallback;
        }
        throw ParseError(std::string("missing field \"dim\" in ") + type_name + " spec");
    }
    const auto& value = obj.at("dim");
    if (!value.is_number_integer() || (value.get<int>() != 4 && value.get<int>() != 8)) {
        throw ParseError("field \"dim\" must be 4 or 8");
    }
    return value.get<int>();
}

Hypercomplex parse_element(const njson& value, int dim, const std::string& field) {
    if (!value.is_array() || value.size() != static_cast<std::size_t>(dim)) {
        throw ParseError("field \"" + field + "\" must have " + std::to_string(dim) +
                         " numeric components");
    }
    std::array<double, kMaxDim> comps{};
    for (std::size_t i = 0; i < value.size(); ++i) {
        comps[i] = parse_number(value[i], field + "[" + std::to_string(i) + "]");
    }
    return Hypercomplex::from_components({comps.data(), static_cast<std::size_t>(dim)});
}

std::vector<Hypercomplex> parse_coeffs(const njson& obj, int dim) {
    if (!obj.contains("coeffs")) {
        throw ParseError("missing field \"coeffs\"");
    }
    const auto& value = obj.at("coeffs");
    if (!value.is_array() || value.empty()) {
        throw ParseError("field \"coeffs\" must be a non-empty array");
    }
    std::vector<Hypercomplex> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(parse_element(value[i], dim, "coeffs[" + std::to_string(i) + "]"));
    }
    return out;
}

int parse_canonical_axis(const njson& obj, int dim) {
    if (!obj.contains("axis") || !obj.at("axis").is_string()) {
        throw ParseError("field \"axis\" must be a string (\"i\", \"j\", \"k\" or \"e<m>\")");
    }
    const auto name = obj.at("axis").get<std::string>();
    int axis = 0;
    if (name == "i") {
        axis = 1;
    } else if (name == "j") {
        axis = 2;
    } else if (name == "k") {
        axis = 3;
    } else if (name.size() >= 2 && name[0] == 'e') {
        try {
            axis = std::stoi(name.substr(1));
        } catch (const std::exception&) {
            axis = 0;
        }
    }
    if (axis < 1 || axis >= dim) {
        throw ParseError("field \"axis\" value \"" + name + "\" is not an imaginary unit of dim " +
                         std::to_string(dim));
    }
    return axis;
}

FunctionSpec parse_function_spec_node(const njson& node) {
    if (!node.is_object()) {
        throw ParseError("function spec must be a JSON object");
    }
    if (!node.contains("type") || !node.at("type").is_string()) {
        throw ParseError("missing field \"type\" in function spec");
    }
    const auto type = node.at("type").get<std::string>();

    if (type == "right_poly") {
        reject_unknown_fields(node, {"type", "dim", "coeffs"}, "right_poly");
        const int dim = parse_dim_field(node, "right_poly", std::nullopt);
        return FunctionSpec::make_right_poly(RightPolynomial(dim, parse_coeffs(node, dim)));
    }
    if (type == "plane_poly") {
        reject_unknown_fields(node, {"type", "dim", "iota", "coeffs"}, "plane_poly");
        if (!node.contains("iota") || !node.at("iota").is_array()) {
            throw ParseError("missing field \"iota\" in plane_poly spec");
        }
        const auto& iota_node = node.at("iota");
        const int dim = static_cast<int>(iota_node.size()) + 1;
        if (dim != kQuaternionDim && dim != kOctonionDim) {
            throw ParseError("field \"iota\" must have 3 or 7 components, got " +
                             std::to_string(iota_node.size()));
        }
        if (node.contains("dim") && parse_dim_field(node, "plane_poly", std::nullopt) != dim) {
            throw ParseError("field \"iota\" length does not match field \"dim\"");
        }
        std::array<double, kMaxDim - 1> comps{};
        for (std::size_t i = 0; i < iota_node.size(); ++i) {
            comps[i] = parse_number(iota_node[i], "iota[" + std::to_string(i) + "]");
        }
        ImaginaryDirection iota = [&] {
            try {
                return ImaginaryDirection::from_components(
                    {comps.data(), static_cast<std::size_t>(dim - 1)});
            } catch (const Error&) {
                throw ParseError("field \"iota\" is not a unit vector (within 1e-9)");
            }
        }();
        return FunctionSpec::make_plane_poly(PlanePolynomial{iota, parse_coeffs(node, dim)});
    }
    if (type == "canonical") {
        reject_unknown_fields(node, {"type", "dim", "axis", "coeffs"}, "canonical");
        const int dim = parse_dim_field(node, "canonical", kQuaternionDim);
        const int axis = parse_canonical_axis(node, dim);
        if (!node.contains("coeffs") || !node.at("coeffs").is_array() ||
            node.at("coeffs").empty()) {
            throw ParseError("field \"coeffs\" must be a non-empty array");
        }
        std::vector<std::complex<double>> coeffs;
        for (std::size_t i = 0; i < node.at("coeffs").size(); ++i) {
            const auto& pair = node.at("coeffs")[i];
            const std::string field = "coeffs[" + std::to_string(i) + "]";
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError("field \"" + field + "\" must be a [re, im] pair");
            }
            coeffs.emplace_back(parse_number(pair[0], field + "[0]"),
                                parse_number(pair[1], field + "[1]"));
        }
        return FunctionSpec::make_canonical(CanonicalSeries{dim, axis, std::move(coeffs)});
    }
    if (type == "builtin") {
        reject_unknown_fields(node, {"type", "dim", "name"}, "builtin");
        if (!node.contains("name") || !node.at("name").is_string()) {
            throw ParseError("missing field \"name\" in builtin spec");
        }
        const auto name = node.at("name").get<std::string>();
        const auto builtin = builtin_from_name(name);
        if (!builtin) {
            throw ParseError("unknown builtin name \"" + name + "\" in field \"name\"");
        }
        const int dim = parse_dim_field(node, "builtin", std::nullopt);
        return FunctionSpec::make_builtin(BuiltinSpec{dim, *builtin});
    }
    throw ParseError("unknown function spec type \"" + type + "\"");
}

njson parse_json_text(const std::string& text, const char* what) {
    try {
        return njson::parse(text);
    } catch (const njson::parse_error& e) {
        throw ParseError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Classify report serialization.

Json order_json(const OrderEstimate& order) {
    if (order.state == OrderEstimate::State::indeterminate) {
        return Json::string("indeterminate");
    }
    return Json::number(order.order);
}

Json classify_json(const RegularityReport& report) {
    auto root = Json::object();
    root.add("command", Json::string("classify"));
    root.add("function", function_spec_json(report.function));

    auto config = Json::object();
    config.add("algebra", Json::string(algebra_name(report.function.dim())));
    config.add("h", Json::number(report.config.h));
    config.add("tolerance_mode", Json::string(report.config.tolerance ? "fixed" : "auto"));
    if (report.config.tolerance) {
        config.add("tolerance", Json::number(*report.config.tolerance));
    }
    config.add("convergence_h0", Json::number(report.config.convergence_h0));
    config.add("grid", grid_json(report.config.grid));
    config.add("normalization", Json::string(kNormalizationNote));
    root.add("config", std::move(config));

    root.add("function_scale", Json::number(report.function_scale));
    root.add("point_count", Json::integer(report.point_count));

    auto ops = Json::array();
    for (const auto& entry : report.operators) {
        auto node = Json::object();
        node.add("operator", Json::string(operator_name(entry.op)));
        node.add("verdict", Json::string(verdict_name(entry.verdict)));
        if (entry.stats) {
            auto stats = Json::object();
            stats.add("count", Json::integer(entry.stats->count));
            stats.add("max_abs", Json::number(entry.stats->max_abs));
            stats.add("mean_abs", Json::number(entry.stats->mean_abs));
            stats.add("l2", Json::number(entry.stats->l2));
            stats.add("argmax_index", Json::integer(entry.stats->argmax_index));
            if (entry.stats->mean_value) {
                stats.add("mean_value", components_json(entry.stats->mean_value->components()));
            }
            node.add("stats", std::move(stats));
        }
        if (entry.tolerance) {
            node.add("tolerance", Json::number(*entry.tolerance));
        }
        if (entry.order.state != OrderEstimate::State::absent) {
            node.add("convergence_order", order_json(entry.order));
        }
        ops.push(std::move(node));
    }
    root.add("operators", std::move(ops));
    return root;
}

void csv_stat_row(std::string& out, const char* op, const std::string& stat,
                  const std::string& value) {
    out += op;
    out += ',';
    out += stat;
    out += ',';
    out += value;
    out += '\n';
}

std::string classify_csv(const RegularityReport& report) {
    std::string out = "operator,stat,value\n";
    for (const auto& entry : report.operators) {
        const char* op = operator_name(entry.op);
        if (entry.stats) {
            csv_stat_row(out, op, "count", std::to_string(entry.stats->count));
            csv_stat_row(out, op, "max_abs", format_double(entry.stats->max_abs));
            csv_stat_row(out, op, "mean_abs", format_double(entry.stats->mean_abs));
            csv_stat_row(out, op, "l2", format_double(entry.stats->l2));
            csv_stat_row(out, op, "argmax_index", std::to_string(entry.stats->argmax_index));
            if (entry.stats->mean_value) {
                const auto& mean = *entry.stats->mean_value;
                for (int a = 0; a < mean.dim(); ++a) {
                    csv_stat_row(out, op, "mean_value_" + std::to_string(a),
                                 format_double(mean[a]));
                }
            }
        }
        if (entry.tolerance) {
            csv_stat_row(out, op, "tolerance", format_double(*entry.tolerance));
        }
        csv_stat_row(out, op, "verdict", verdict_name(entry.verdict));
        if (entry.order.state == OrderEstimate::State::indeterminate) {
            csv_stat_row(out, op, "convergence_order", "indeterminate");
        } else if (entry.order.state == OrderEstimate::State::value) {
            csv_stat_row(out, op, "convergence_order", format_double(entry.order.order));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classify report parsing (round trip).

const njson& member(const njson& obj, const char* key, const char* ctx) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ParseError(std::string("classify report: missing \"") + key + "\" in " + ctx);
    }
    return obj.at(key);
}

double member_num(const njson& obj, const char* key, const char* ctx) {
    const auto& v = member(obj, key, ctx);
    if (!v.is_number()) {
        throw ParseError(std::string("classify report: \"") + key + "\" must be a number");
    }
    return v.get<double>();
}

AxisRange axis_range_from_json(const njson& node, const char* ctx) {
    if (!node.is_array() || node.size() != 3) {
        throw ParseError(std::string("classify report: ") + ctx + " must be [lo, hi, count]");
    }
    return AxisRange{node[0].get<double>(), node[1].get<double>(), node[2].get<int>()};
}

Hypercomplex element_from_json(const njson& node, const char* ctx) {
    if (!node.is_array() || (node.size() != 4 && node.size() != 8)) {
        throw ParseError(std::string("classify report: ") + ctx +
                         " must be a 4- or 8-component array");
    }
    std::array<double, kMaxDim> comps{};
    for (std::size_t i = 0; i < node.size(); ++i) {
        comps[i] = node[i].get<double>();
    }
    return Hypercomplex::from_components({comps.data(), node.size()});
}

GridSpec grid_from_json(const njson& node) {
    GridSpec grid;
    grid.dim = member(node, "dim", "grid").get<int>();
    grid.axes.clear();
    for (const auto& axis : member(node, "axes", "grid")) {
        grid.axes.push_back(axis_range_from_json(axis, "grid axis"));
    }
    grid.axis_exclusion_radius = member_num(node, "exclude_axis_radius", "grid");
    grid.seed = member(node, "seed", "grid").get<std::uint64_t>();
    grid.jitter = member_num(node, "jitter", "grid");
    const auto& plane = member(node, "plane", "grid");
    if (!plane.is_null()) {
        const auto& iota_node = member(plane, "iota", "grid plane");
        std::array<double, kMaxDim - 1> comps{};
        for (std::size_t i = 0; i < iota_node.size(); ++i) {
            comps[i] = iota_node[i].get<double>();
        }
        grid.plane = PlaneRestriction{
            ImaginaryDirection::from_components({comps.data(), iota_node.size()}),
            axis_range_from_json(member(plane, "t_range", "grid plane"), "grid plane t_range")};
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Residual-map and convergence reports.

struct MapRow {
    std::vector<double> residual;
    double norm;
};

Json point_json(const Hypercomplex& q) { return components_json(q.components()); }

std::string residual_map_report(const FunctionSpec& spec, OperatorKind op, const GridSpec& grid,
                                double h, OutputFormat format) {
    const auto points = sample_grid(grid);
    std::vector<MapRow> rows;
    rows.reserve(points.size());
    std::optional<Hypercomplex> derivative_value;

    if (op == OperatorKind::global_left) {
        std::vector<Hypercomplex> values;
        values.reserve(points.size());
        for (const auto& q : points) {
            values.push_back(apply_global_left(spec, q, h));
        }
        auto mean = Hypercomplex::zero(spec.dim());
        for (const auto& v : values) {
            mean = mean + v;
        }
        mean = mean / static_cast<double>(values.size());
        derivative_value = mean;
        for (const auto& v : values) {
            const auto dev = v - mean;
            MapRow row;
            row.residual.assign(dev.components().begin(), dev.components().end());
            row.norm = dev.norm();
            rows.push_back(std::move(row));
        }
    } else {
        for (const auto& q : points) {
            const auto values = apply_operator(spec, op, q, h);
            MapRow row;
            for (const auto& v : values) {
                row.residual.insert(row.residual.end(), v.components().begin(),
                                    v.components().end());
            }
            row.norm = residual_norm(values);
            rows.push_back(std::move(row));
        }
    }

    if (format == OutputFormat::csv) {
        std::string out;
        for (int a = 0; a < spec.dim(); ++a) {
            out += "point_" + std::to_string(a) + ",";
        }
        for (std::size_t c = 0; c < rows.front().residual.size(); ++c) {
            out += "residual_" + std::to_string(c) + ",";
        }
        out += "norm\n";
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (double c : points[i].components()) {
                out += format_double(c) + ",";
            }
            for (double c : rows[i].residual) {
                out += format_double(c) + ",";
            }
            out += format_double(rows[i].norm) + "\n";
        }
        return out;
    }

    auto root = Json::object();
    root.add("command", Json::string("residual-map"));
    root.add("function", function_spec_json(spec));
    root.add("operator", Json::string(operator_name(op)));
    auto config = Json::object();
    config.add("algebra", Json::string(algebra_name(spec.dim())));
    config.add("h", Json::number(h));
    config.add("grid", grid_json(grid));
    config.add("normalization", Json::string(kNormalizationNote));
    root.add("config", std::move(config));
    root.add("point_count", Json::integer(static_cast<std::int64_t>(points.size())));
    if (derivative_value) {
        root.add("derivative_value", components_json(derivative_value->components()));
    }
    auto list = Json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto row = Json::object();
        row.add("point", point_json(points[i]));
        row.add("residual", components_json(rows[i].residual));
        row.add("norm", Json::number(rows[i].norm));
        list.push(std::move(row));
    }
    root.add("points", std::move(list));
    return root.dump();
}

std::string convergence_report(const FunctionSpec& spec, const std::vector<OperatorKind>& ops,
                               const GridSpec& grid, double h0, int max_points,
                               OutputFormat format) {
    const auto points = sample_grid(grid);
    const std::size_t stride =
        std::max<std::size_t>(1, (points.size() + static_cast<std::size_t>(max_points) - 1) /
                                     static_cast<std::size_t>(max_points));

    struct Row {
        OperatorKind op;
        const Hypercomplex* point;
        double residual_norm;
        OrderEstimate order;
    };
    std::vector<Row> rows;
    for (OperatorKind op : ops) {
        for (std::size_t i = 0; i < points.size(); i += stride) {
            const auto& q = points[i];
            const double res = residual_norm(apply_operator(spec, op, q, h0));
            rows.push_back({op, &q, res, estimate_convergence_order(spec, op, q, h0)});
        }
    }

    if (format == OutputFormat::csv) {
        std::string out = "operator,";
        for (int a = 0; a < spec.dim(); ++a) {
            out += "point_" + std::to_string(a) + ",";
        }
        out += "residual_norm,order\n";
        for (const auto& row : rows) {
            out += operator_name(row.op);
            out += ',';
            for (double c : row.point->components()) {
                out += format_double(c) + ",";
            }
            out += format_double(row.residual_norm) + ",";
            out += row.order.state == OrderEstimate::State::indeterminate
                       ? "indeterminate"
                       : format_double(row.order.order);
            out += '\n';
        }
        return out;
    }

    auto root = Json::object();
    root.add("command", Json::string("convergence"));
    root.add("function", function_spec_json(spec));
    auto config = Json::object();
    config.add("algebra", Json::string(algebra_name(spec.dim())));
    config.add("h0", Json::number(h0));
    config.add("max_points", Json::integer(max_points));
    config.add("grid", grid_json(grid));
    config.add("normalization", Json::string(kNormalizationNote));
    root.add("config", std::move(config));
    auto list = Json::array();
    for (const auto& row : rows) {
        auto node = Json::object();
        node.add("operator", Json::string(operator_name(row.op)));
        node.add("point", point_json(*row.point));
        node.add("residual_norm", Json::number(row.residual_norm));
        node.add("order", order_json(row.order));
        list.push(std::move(node));
    }
    root.add("rows", std::move(list));
    return root.dump();
}

// ---------------------------------------------------------------------------
// Job plumbing.

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read spec file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

FunctionSpec load_spec(const JobConfig& config) {
    if (config.spec_path && config.spec_json) {
        throw ConfigError("give either --spec or --spec-json, not both");
    }
    if (config.spec_path) {
        return parse_function_spec(read_file(*config.spec_path));
    }
    if (config.spec_json) {
        return parse_function_spec(*config.spec_json);
    }
    throw ConfigError("a function spec is required (--spec FILE or --spec-json TEXT)");
}

GridSpec build_grid(const JobConfig& config, const FunctionSpec& spec) {
    GridSpec grid;
    grid.dim = spec.dim();
    if (config.grid_axes.empty()) {
        grid.axes = GridSpec::defaults(grid.dim).axes;
    } else if (config.grid_axes.size() == 1) {
        grid.axes.assign(static_cast<std::size_t>(grid.dim), config.grid_axes.front());
    } else if (config.grid_axes.size() == static_cast<std::size_t>(grid.dim)) {
        grid.axes = config.grid_axes;
    } else {
        throw ConfigError("--grid expects one range or one per axis (" +
                          std::to_string(grid.dim) + "), got " +
                          std::to_string(config.grid_axes.size()));
    }
    grid.axis_exclusion_radius = config.axis_exclusion_radius;
    grid.seed = config.seed;
    grid.jitter = config.jitter;
    if (spec.plane_restricted()) {
        grid.plane = PlaneRestriction{
            spec.plane_direction(),
            config.plane_t.value_or(
                AxisRange{kDefaultPlaneTLo, kDefaultPlaneTHi, grid.axes.front().count})};
    } else if (config.plane_t) {
        throw ConfigError("--plane-t requires a plane-restricted function spec");
    }
    return grid;
}

void require_exclusion(const GridSpec& grid, double step) {
    const double needed = kOperatorAxisEps + step;
    if (grid.axis_exclusion_radius < needed) {
        throw ConfigError("axis exclusion radius " + std::to_string(grid.axis_exclusion_radius) +
                          " is below the local-operator minimum " + std::to_string(needed));
    }
}

std::string execute(const JobConfig& config) {
    if (config.command == Command::table) {
        if (config.spec_path || config.spec_json) {
            throw ConfigError("table does not take a function spec");
        }
        return serialize_basis_table(config.dim.value_or(kQuaternionDim), config.format);
    }

    const FunctionSpec spec = load_spec(config);
    if (config.dim && *config.dim != spec.dim()) {
        throw ConfigError("--algebra does not match the function spec dimension");
    }
    GridSpec grid = build_grid(config, spec);

    switch (config.command) {
        case Command::classify: {
            ClassifyConfig cc{config.h, config.tolerance, grid, config.convergence_h0};
            return serialize_report(classify(spec, cc), config.format);
        }
        case Command::residual_map: {
            require_exclusion(grid, config.h);
            if (!operator_supports_dim(config.op, spec.dim())) {
                throw DimensionError(std::string(operator_name(config.op)) +
                                     " is unsupported for " + algebra_name(spec.dim()) + "s");
            }
            return residual_map_report(spec, config.op, grid, config.h, config.format);
        }
        case Command::convergence: {
            require_exclusion(grid, config.convergence_h0);
            if (config.max_points < 1) {
                throw ConfigError("--max-points must be >= 1");
            }
            std::vector<OperatorKind> ops;
            if (config.op_given) {
                if (!operator_supports_dim(config.op, spec.dim())) {
                    throw DimensionError(std::string(operator_name(config.op)) +
                                         " is unsupported for " + algebra_name(spec.dim()) + "s");
                }
                ops.push_back(config.op);
            } else {
                for (OperatorKind op : kClassifyOperators) {
                    if (op != OperatorKind::third_order_probe &&
                        operator_supports_dim(op, spec.dim())) {
                        ops.push_back(op);
                    }
                }
            }
            return convergence_report(spec, ops, grid, config.convergence_h0, config.max_points,
                                      config.format);
        }
        case Command::table:
            break;
    }
    throw ConfigError("unknown command");
}

void deliver(const std::string& text, const std::optional<std::string>& out_path,
             std::ostream& out) {
    if (!out_path) {
        out << text;
        return;
    }
    const std::filesystem::path target(*out_path);
    const std::filesystem::path temp(*out_path + ".tmp");
    {
        std::ofstream file(temp, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw Error("cannot write output file: " + temp.string());
        }
        file << text;
        if (!file.flush()) {
            throw Error("cannot write output file: " + temp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, target, ec);
    if (ec) {
        throw Error("cannot move output into place: " + ec.message());
    }
}

}  // namespace

const char* command_name(Command command) {
    switch (command) {
        case Command::classify: return "classify";
        case Command::residual_map: return "residual-map";
        case Command::convergence: return "convergence";
        case Command::table: return "table";
    }
    throw ConfigError("command_name: unknown command");
}

std::optional<Command> command_from_name(const std::string& name) {
    for (Command c : {Command::classify, Command::residual_map, Command::convergence,
                      Command::table}) {
        if (name == command_name(c)) {
            return c;
        }
    }
    return std::nullopt;
}

const char* format_name(OutputFormat format) {
    return format == OutputFormat::json ? "json" : "csv";
}

std::optional<OutputFormat> format_from_name(const std::string& name) {
    if (name == "json") {
        return OutputFormat::json;
    }
    if (name == "csv") {
        return OutputFormat::csv;
    }
    return std::nullopt;
}

const char* algebra_name(int dim) {
    if (dim == kQuaternionDim) {
        return "quaternion";
    }
    if (dim == kOctonionDim) {
        return "octonion";
    }
    throw DimensionError("algebra dimension must be 4 or 8");
}

std::optional<int> algebra_dim_from_name(const std::string& name) {
    if (name == "quaternion") {
        return kQuaternionDim;
    }
    if (name == "octonion") {
        return kOctonionDim;
    }
    return std::nullopt;
}

FunctionSpec parse_function_spec(const std::string& text) {
    return parse_function_spec_node(parse_json_text(text, "function spec"));
}

std::string serialize_function_spec(const FunctionSpec& spec) {
    return function_spec_json(spec).dump();
}

std::string serialize_report(const RegularityReport& report, OutputFormat format) {
    if (format == OutputFormat::csv) {
        return classify_csv(report);
    }
    return classify_json(report).dump();
}

RegularityReport classify_report_from_json(const std::string& text) {
    const auto root = parse_json_text(text, "classify report");
    if (member(root, "command", "report").get<std::string>() != "classify") {
        throw ParseError("classify report: \"command\" must be \"classify\"");
    }

    RegularityReport report{parse_function_spec_node(member(root, "function", "report")),
                            ClassifyConfig{},
                            0.0,
                            0,
                            {}};
    const auto& config = member(root, "config", "report");
    report.config.h = member_num(config, "h", "config");
    if (member(config, "tolerance_mode", "config").get<std::string>() == "fixed") {
        report.config.tolerance = member_num(config, "tolerance", "config");
    }
    report.config.convergence_h0 = member_num(config, "convergence_h0", "config");
    report.config.grid = grid_from_json(member(config, "grid", "config"));

    report.function_scale = member_num(root, "function_scale", "report");
    report.point_count = member(root, "point_count", "report").get<std::int64_t>();

    for (const auto& node : member(root, "operators", "report")) {
        OperatorReport entry{OperatorKind::crf, Verdict::not_applicable, std::nullopt,
                             std::nullopt, OrderEstimate::absent()};
        const auto op_name = member(node, "operator", "operator entry").get<std::string>();
        const auto op = operator_from_name(op_name);
        if (!op) {
            throw ParseError("classify report: unknown operator \"" + op_name + "\"");
        }
        entry.op = *op;
        const auto verdict_text = member(node, "verdict", "operator entry").get<std::string>();
        const auto verdict = verdict_from_name(verdict_text);
        if (!verdict) {
            throw ParseError("classify report: unknown verdict \"" + verdict_text + "\"");
        }
        entry.verdict = *verdict;
        if (node.contains("stats")) {
            const auto& stats_node = node.at("stats");
            ResidualStats stats;
            stats.op = *op;
            stats.count = member(stats_node, "count", "stats").get<std::int64_t>();
            stats.max_abs = member_num(stats_node, "max_abs", "stats");
            stats.mean_abs = member_num(stats_node, "mean_abs", "stats");
            stats.l2 = member_num(stats_node, "l2", "stats");
            stats.argmax_index = member(stats_node, "argmax_index", "stats").get<std::int64_t>();
            if (stats_node.contains("mean_value")) {
                stats.mean_value = element_from_json(stats_node.at("mean_value"), "mean_value");
            }
            entry.stats = stats;
        }
        if (node.contains("tolerance")) {
            entry.tolerance = node.at("tolerance").get<double>();
        }
        if (node.contains("convergence_order")) {
            const auto& order = node.at("convergence_order");
            entry.order = order.is_string() ? OrderEstimate::indeterminate()
                                            : OrderEstimate::of(order.get<double>());
        }
        report.operators.push_back(std::move(entry));
    }
    return report;
}

std::string serialize_basis_table(int dim, OutputFormat format) {
    const BasisTable table = basis_table(dim);
    if (format == OutputFormat::csv) {
        std::string out;
        for (int col = 0; col < dim; ++col) {
            out += ",e" + std::to_string(col);
        }
        out += '\n';
        for (int row = 0; row < dim; ++row) {
            out += "e" + std::to_string(row);
            for (int col = 0; col < dim; ++col) {
                out += ',' + table.cell_string(row, col);
            }
            out += '\n';
        }
        return out;
    }
    auto root = Json::object();
    root.add("command", Json::string("table"));
    root.add("algebra", Json::string(algebra_name(dim)));
    root.add("dim", Json::integer(dim));
    auto cells = Json::array();
    for (int row = 0; row < dim; ++row) {
        auto line = Json::array();
        for (int col = 0; col < dim; ++col) {
            line.push(Json::string(table.cell_string(row, col)));
        }
        cells.push(std::move(line));
    }
    root.add("cells", std::move(cells));
    return root.dump();
}

int run_job(const JobConfig& config, std::ostream& out, std::ostream& err) {
    try {
        deliver(execute(config), config.out_path, out);
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hyperan
