#include "approxc1/error.hpp"
#include "approxc1/fixtures.hpp"
#include "approxc1/topology.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace approxc1 {

using nlohmann::json;

namespace {

std::string line_col(const std::string& text, std::size_t byte)
{
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

int as_int(const json& v, const std::string& where)
{
    if (!v.is_number_integer())
        throw ParseError(where + ": expected an integer");
    return v.get<int>();
}

double as_double(const json& v, const std::string& where)
{
    if (!v.is_number())
        throw ParseError(where + ": expected a number");
    return v.get<double>();
}

std::vector<double> as_knots(const json& v, const std::string& where)
{
    if (!v.is_array())
        throw ParseError(where + ": expected an array of knots");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = as_double(v[i], where + "[" + std::to_string(i) + "]");
        if (x < 0.0 || x > 1.0)
            throw ParseError(where + "[" + std::to_string(i) + "]: knot outside [0, 1]");
        out.push_back(x);
    }
    return out;
}

KnotVector make_knots(int degree, const json& v, const std::string& where)
{
    std::vector<double> knots = as_knots(v, where);
    try {
        return KnotVector::from_knots(degree, std::move(knots));
    } catch (const Error& e) {
        throw ParseError(where + ": " + e.what());
    }
}

} // namespace

std::vector<Patch> parse_geometry(const std::string& text, const std::string& source)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source + ": " + line_col(text, e.byte) + ": malformed JSON");
    }
    const json& list = field(doc, "patches", source);
    if (!list.is_array() || list.empty())
        throw ParseError(source + ": 'patches' must be a non-empty array");
    std::vector<Patch> patches;
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string where = source + ": patches[" + std::to_string(k) + "]";
        const json& p = list[k];
        const int du = as_int(field(p, "degree_u", where), where + ".degree_u");
        const int dv = as_int(field(p, "degree_v", where), where + ".degree_v");
        const KnotVector ku = make_knots(du, field(p, "knots_u", where), where + ".knots_u");
        const KnotVector kv = make_knots(dv, field(p, "knots_v", where), where + ".knots_v");
        const TensorSplineSpace space{SplineSpace(ku), SplineSpace(kv)};
        const json& cps = field(p, "control_points", where);
        if (!cps.is_array() || static_cast<int>(cps.size()) != space.dim())
            throw ParseError(where + ".control_points: expected " + std::to_string(space.dim()) + " points");
        std::vector<Vec2> control;
        for (std::size_t i = 0; i < cps.size(); ++i) {
            const std::string at = where + ".control_points[" + std::to_string(i) + "]";
            if (!cps[i].is_array() || cps[i].size() != 2)
                throw ParseError(at + ": expected [x, y]");
            control.emplace_back(as_double(cps[i][0], at), as_double(cps[i][1], at));
        }
        patches.emplace_back(space, std::move(control));
        try {
            check_regularity(patches.back());
        } catch (const DegenerateGeometryError& e) {
            throw DegenerateGeometryError(where + ": " + e.what());
        }
    }
    detect_topology(patches);
    return patches;
}

std::vector<Patch> load_geometry(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_geometry(buf.str(), path);
}

std::string geometry_to_json(const std::vector<Patch>& patches)
{
    json list = json::array();
    for (const Patch& p : patches) {
        json cps = json::array();
        for (const Vec2& c : p.control())
            cps.push_back({c[0], c[1]});
        list.push_back({{"degree_u", p.space().space_u().degree()},
                        {"degree_v", p.space().space_v().degree()},
                        {"knots_u", p.space().space_u().knot_vector().knots()},
                        {"knots_v", p.space().space_v().knot_vector().knots()},
                        {"control_points", cps}});
    }
    return json{{"patches", list}}.dump(2);
}

void save_geometry(const std::vector<Patch>& patches, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw ParseError(path + ": cannot write file");
    out << geometry_to_json(patches) << '\n';
}

} // namespace approxc1
