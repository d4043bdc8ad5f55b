#include "ttchow/toymodels.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ttchow::toy {

using json = nlohmann::json;
using klocal::GroupKind;
using klocal::LocalGroupInfo;
using klocal::LocalValue;
using klocal::SupportedElement;
using klocal::Window;
using space::Point;
using zlin::FinAbGroup;
using zlin::IntMatrix;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw ValidationError(where + ": " + msg);
}

Int parse_int(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            fail(where, "not a decimal integer: " + j.get<std::string>());
        }
    }
    fail(where, "expected an integer or a decimal string");
}

std::vector<Int> parse_int_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of integers");
    std::vector<Int> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_int(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

IntMatrix parse_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows) fail(where, "expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<Int> row = parse_int_list(j[i], where + "[" + std::to_string(i) + "]");
        if (row.size() != cols) fail(where, "expected " + std::to_string(cols) + " columns");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
    }
    return m;
}

json int_to_json(const Int& x) {
    static const Int big = Int(1) << 53;
    if (x < big && x > -big) return json(x.convert_to<long long>());
    return json(x.str());
}

struct GroupKey {
    std::string point;
    int p;
    auto operator<=>(const GroupKey&) const = default;
};
struct BoundaryKeyT {
    std::string from, to;
    int p;
    auto operator<=>(const BoundaryKeyT&) const = default;
};
struct PairKey {
    std::string left, right, out;
    auto operator<=>(const PairKey&) const = default;
};

class ToyKLocalData final : public klocal::KLocalData {
public:
    std::string name;
    Window window_{0, 0, false};
    std::shared_ptr<space::FinitePosetModel> model;
    std::map<GroupKey, FinAbGroup> groups;
    std::map<BoundaryKeyT, IntMatrix> boundaries;
    std::map<int, std::vector<SupportedElement>> ker_i;  // by stratum dimension l

    Window window() const override { return window_; }

    // total: zero unless declared (window() records the declared coverage;
    // operations that need coverage check it themselves)
    LocalGroupInfo group_info(const Point& q, int p) const override {
        auto it = groups.find({q.id, p});
        if (it == groups.end() || it->second.is_trivial()) return LocalGroupInfo{};
        return LocalGroupInfo{GroupKind::finitely_generated, it->second, ""};
    }

    IntMatrix boundary_matrix(const Point& from, const Point& to, int p) const override {
        LocalGroupInfo src = group_info(from, p), dst = group_info(to, p - 1);
        std::size_t r = dst.kind == GroupKind::finitely_generated ? dst.group.rank() : 0;
        std::size_t c = src.kind == GroupKind::finitely_generated ? src.group.rank() : 0;
        auto it = boundaries.find({from.id, to.id, p});
        if (it == boundaries.end()) return IntMatrix(r, c);
        return it->second;
    }

    std::optional<std::vector<SupportedElement>> explicit_ker_i_generators(int l) const override {
        auto it = ker_i.find(l);
        if (it == ker_i.end()) return std::nullopt;
        return it->second;
    }

    std::vector<BoundaryKey> declared_boundaries() const override {
        std::vector<BoundaryKey> out;
        for (const auto& [k, m] : boundaries) out.push_back({Point{k.from}, Point{k.to}, k.p});
        return out;
    }

    std::string backend_name() const override { return "toy:" + name; }
};

class ToyPairing final : public klocal::PairingData {
public:
    std::string id;
    std::shared_ptr<space::FinitePosetModel> model;
    std::shared_ptr<ToyKLocalData> data;
    SupportedElement unit_;
    // table[i][j] = coordinates in K0(out) of gen_i(left) * gen_j(right)
    std::map<PairKey, std::vector<std::vector<std::vector<Int>>>> entries;

    std::string pairing_id() const override { return id; }
    SupportedElement unit() const override { return unit_; }

    std::vector<Point> product_support(const Point& x, const Point& y) const override {
        std::vector<Point> out;
        int want = model->dim(x) + model->dim(y);
        for (const Point& z : model->enumerate(space::EnumBound::unbounded()))
            if (model->dim(z) == want && model->specializes(x, z) && model->specializes(y, z))
                out.push_back(z);
        return out;
    }

    LocalValue pair(const Point& x, const LocalValue& a, const Point& y, const LocalValue& b,
                    const Point& z) const override {
        auto it = entries.find({x.id, y.id, z.id});
        bool flipped = false;
        if (it == entries.end()) {
            it = entries.find({y.id, x.id, z.id});
            flipped = true;
        }
        if (it == entries.end())
            throw MissingDataError("pairing " + id + " has no entry for (" + x.id + ", " + y.id +
                                   ") -> " + z.id);
        const auto& table = it->second;
        const std::vector<Int>& ca = flipped ? b.coords : a.coords;
        const std::vector<Int>& cb = flipped ? a.coords : b.coords;
        LocalGroupInfo out_info = data->group_info(z, 0);
        std::size_t out_rank =
            out_info.kind == GroupKind::finitely_generated ? out_info.group.rank() : 0;
        std::vector<Int> acc(out_rank);
        for (std::size_t i = 0; i < ca.size(); ++i)
            for (std::size_t j = 0; j < cb.size(); ++j) {
                if (ca[i] == 0 || cb[j] == 0) continue;
                const std::vector<Int>& cell = table[i][j];
                for (std::size_t k = 0; k < out_rank; ++k) acc[k] += ca[i] * cb[j] * cell[k];
            }
        return LocalValue::fg(std::move(acc));
    }
};

FinAbGroup group_or_zero(const ToyKLocalData& d, const std::string& id, int p) {
    auto it = d.groups.find({id, p});
    return it == d.groups.end() ? FinAbGroup() : it->second;
}

// bilinearity = well-definedness of the induced map on the tensor product:
// every relation of either factor must be killed in the output group
void check_pairing_entry(const std::string& where, const FinAbGroup& gl, const FinAbGroup& gr,
                         const FinAbGroup& go,
                         const std::vector<std::vector<std::vector<Int>>>& table) {
    if (table.size() != gl.rank()) fail(where, "table must have one row per left generator");
    for (const auto& row : table) {
        if (row.size() != gr.rank()) fail(where, "table row length must match right generators");
        for (const auto& cell : row)
            if (cell.size() != go.rank()) fail(where, "table cell length must match output generators");
    }
    auto value = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> acc(go.rank());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                for (std::size_t k = 0; k < go.rank(); ++k) acc[k] += a[i] * b[j] * table[i][j][k];
        return acc;
    };
    for (std::size_t c = 0; c < gl.presentation().cols(); ++c) {
        std::vector<Int> rel(gl.rank());
        for (std::size_t i = 0; i < gl.rank(); ++i) rel[i] = gl.presentation()(i, c);
        for (std::size_t j = 0; j < gr.rank(); ++j) {
            std::vector<Int> e(gr.rank());
            e[j] = 1;
            if (!go.is_zero(value(rel, e)))
                fail(where, "not bilinear: a left relation is not killed (ill-defined on the tensor product)");
        }
    }
    for (std::size_t c = 0; c < gr.presentation().cols(); ++c) {
        std::vector<Int> rel(gr.rank());
        for (std::size_t j = 0; j < gr.rank(); ++j) rel[j] = gr.presentation()(j, c);
        for (std::size_t i = 0; i < gl.rank(); ++i) {
            std::vector<Int> e(gl.rank());
            e[i] = 1;
            if (!go.is_zero(value(e, rel)))
                fail(where, "not bilinear: a right relation is not killed (ill-defined on the tensor product)");
        }
    }
}

SupportedElement parse_supported(const json& j, const ToyKLocalData& d, int l, int p,
                                 const std::string& where) {
    SupportedElement s;
    s.l = l;
    s.p = p;
    if (!j.is_array()) fail(where, "expected an array of {point, coords} terms");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        std::string w = where + "[" + std::to_string(i) + "]";
        if (!t.contains("point")) fail(w, "missing 'point'");
        Point pt{t["point"].get<std::string>()};
        if (!d.model->contains(pt)) fail(w, "unknown point " + pt.id);
        if (d.model->dim(pt) != l) fail(w, "support point " + pt.id + " has the wrong dimension");
        std::vector<Int> coords = parse_int_list(t.at("coords"), w + ".coords");
        FinAbGroup g = group_or_zero(d, pt.id, p);
        if (coords.size() != g.rank()) fail(w, "coords length must match the group rank");
        s.entries[pt] = LocalValue::fg(std::move(coords));
    }
    return s;
}

}  // namespace

LoadedModel load_from_string(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ValidationError(origin + ": top level must be an object");
    if (!j.contains("schema_version") || parse_int(j["schema_version"], "schema_version") != 1)
        throw ValidationError(origin + ": schema_version must be 1");

    std::string name = j.value("name", origin);

    if (!j.contains("points") || !j["points"].is_array())
        throw ValidationError(origin + ": missing 'points' array");

    std::vector<Point> pts;
    std::map<std::string, std::string> display;
    std::map<std::string, int> dims;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
        const json& p = j["points"][i];
        std::string where = "points[" + std::to_string(i) + "]";
        if (!p.contains("id")) fail(where, "missing 'id'");
        std::string id = p["id"].get<std::string>();
        if (!seen.insert(id).second) fail(where, "duplicate id " + id);
        if (!p.contains("dim")) fail(where, "missing 'dim'");
        pts.push_back({id});
        dims[id] = int(parse_int(p["dim"], where + ".dim").convert_to<long long>());
        if (p.contains("display")) display[id] = p["display"].get<std::string>();
    }

    std::vector<std::pair<Point, Point>> spec_pairs;
    for (std::size_t i = 0; i < j.value("specializations", json::array()).size(); ++i) {
        const json& s = j["specializations"][i];
        std::string where = "specializations[" + std::to_string(i) + "]";
        if (!s.is_array() || s.size() != 2) fail(where, "expected [from, to]");
        std::string a = s[0].get<std::string>(), b = s[1].get<std::string>();
        if (!seen.count(a)) fail(where, "unknown point " + a);
        if (!seen.count(b)) fail(where, "unknown point " + b);
        spec_pairs.push_back({{a}, {b}});
    }

    std::shared_ptr<space::FinitePosetModel> model;
    try {
        model = std::make_shared<space::FinitePosetModel>(name, pts, display, spec_pairs, dims);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("specializations: ") + e.what());
    }

    auto data = std::make_shared<ToyKLocalData>();
    data->name = name;
    data->model = model;
    if (!j.contains("window")) fail("window", "missing");
    data->window_.lo = int(parse_int(j["window"].at("lo"), "window.lo").convert_to<long long>());
    data->window_.hi = int(parse_int(j["window"].at("hi"), "window.hi").convert_to<long long>());
    if (data->window_.lo > data->window_.hi) fail("window", "lo > hi");

    for (std::size_t i = 0; i < j.value("groups", json::array()).size(); ++i) {
        const json& g = j["groups"][i];
        std::string where = "groups[" + std::to_string(i) + "]";
        std::string pid = g.at("point").get<std::string>();
        if (!seen.count(pid)) fail(where, "unknown point " + pid);
        int p = int(parse_int(g.at("p"), where + ".p").convert_to<long long>());
        if (!data->window_.covers(p)) fail(where, "weight outside the window");
        std::vector<Int> torsion = g.contains("torsion") ? parse_int_list(g["torsion"], where + ".torsion")
                                                         : std::vector<Int>{};
        for (const Int& t : torsion)
            if (t < 2) fail(where + ".torsion", "torsion coefficients must be >= 2");
        std::size_t fr = g.contains("free_rank")
                             ? std::size_t(parse_int(g["free_rank"], where + ".free_rank").convert_to<long long>())
                             : 0;
        GroupKey key{pid, p};
        if (data->groups.count(key)) fail(where, "duplicate group entry");
        data->groups.emplace(key, FinAbGroup::from_invariants(torsion, fr));
    }

    for (std::size_t i = 0; i < j.value("boundaries", json::array()).size(); ++i) {
        const json& b = j["boundaries"][i];
        std::string where = "boundaries[" + std::to_string(i) + "]";
        std::string from = b.at("from").get<std::string>(), to = b.at("to").get<std::string>();
        if (!seen.count(from)) fail(where, "unknown point " + from);
        if (!seen.count(to)) fail(where, "unknown point " + to);
        int p = int(parse_int(b.at("p"), where + ".p").convert_to<long long>());
        FinAbGroup src = group_or_zero(*data, from, p);
        FinAbGroup dst = group_or_zero(*data, to, p - 1);
        IntMatrix m = parse_matrix(b.at("matrix"), dst.rank(), src.rank(), where + ".matrix");
        // well-definedness on the presented groups
        try {
            zlin::AbHom h(src, dst, m);
        } catch (const WellDefinednessError& e) {
            fail(where + ".matrix", e.what());
        }
        BoundaryKeyT key{from, to, p};
        if (data->boundaries.count(key)) fail(where, "duplicate boundary entry");
        data->boundaries.emplace(key, std::move(m));
    }

    for (std::size_t i = 0; i < j.value("ker_i_generators", json::array()).size(); ++i) {
        const json& k = j["ker_i_generators"][i];
        std::string where = "ker_i_generators[" + std::to_string(i) + "]";
        int l = int(parse_int(k.at("l"), where + ".l").convert_to<long long>());
        std::vector<SupportedElement> elems;
        const json& arr = k.at("elements");
        if (!arr.is_array()) fail(where + ".elements", "expected an array");
        for (std::size_t e = 0; e < arr.size(); ++e)
            elems.push_back(
                parse_supported(arr[e], *data, l, 0, where + ".elements[" + std::to_string(e) + "]"));
        data->ker_i[l] = std::move(elems);
    }

    std::shared_ptr<ToyPairing> pairing;
    if (j.contains("pairing")) {
        const json& pj = j["pairing"];
        pairing = std::make_shared<ToyPairing>();
        pairing->id = pj.value("id", name + "-pairing");
        pairing->model = model;
        pairing->data = data;
        pairing->unit_ = parse_supported(pj.at("unit"), *data, 0, 0, "pairing.unit");
        for (std::size_t i = 0; i < pj.value("entries", json::array()).size(); ++i) {
            const json& e = pj["entries"][i];
            std::string where = "pairing.entries[" + std::to_string(i) + "]";
            std::string left = e.at("left").get<std::string>();
            std::string right = e.at("right").get<std::string>();
            std::string out = e.at("out").get<std::string>();
            for (const std::string& id : {left, right, out})
                if (!seen.count(id)) fail(where, "unknown point " + id);
            if (dims[out] != dims[left] + dims[right])
                fail(where, "output point dimension must be dim(left) + dim(right)");
            if (!model->specializes({left}, {out}) || !model->specializes({right}, {out}))
                fail(where, "output point must be a common specialization");
            FinAbGroup gl = group_or_zero(*data, left, 0);
            FinAbGroup gr = group_or_zero(*data, right, 0);
            FinAbGroup go = group_or_zero(*data, out, 0);
            const json& tj = e.at("table");
            std::vector<std::vector<std::vector<Int>>> table(gl.rank());
            if (!tj.is_array() || tj.size() != gl.rank())
                fail(where + ".table", "need one row per left generator");
            for (std::size_t a = 0; a < gl.rank(); ++a) {
                if (!tj[a].is_array() || tj[a].size() != gr.rank())
                    fail(where + ".table", "need one cell per right generator");
                table[a].resize(gr.rank());
                for (std::size_t b = 0; b < gr.rank(); ++b)
                    table[a][b] = parse_int_list(tj[a][b], where + ".table cell");
            }
            check_pairing_entry(where, gl, gr, go, table);
            pairing->entries[{left, right, out}] = std::move(table);
        }
    }

    return LoadedModel{name, model, data, pairing};
}

LoadedModel load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_from_string(ss.str(), path);
}

nlohmann::json serialize(const LoadedModel& m) {
    json out;
    out["schema_version"] = 1;
    out["name"] = m.name;
    json pts = json::array();
    for (const Point& p : m.model->enumerate(space::EnumBound::unbounded())) {
        json e;
        e["id"] = p.id;
        e["dim"] = m.model->dim(p);
        if (m.model->display(p) != p.id) e["display"] = m.model->display(p);
        pts.push_back(e);
    }
    out["points"] = pts;
    json specs = json::array();
    auto all = m.model->enumerate(space::EnumBound::unbounded());
    for (const Point& a : all)
        for (const Point& b : all)
            if (a != b && m.model->specializes(a, b)) specs.push_back(json::array({a.id, b.id}));
    out["specializations"] = specs;
    klocal::Window w = m.data->window();
    out["window"] = json{{"lo", w.lo}, {"hi", w.hi}};
    json groups = json::array();
    for (const Point& p : all)
        for (int q = w.lo; q <= w.hi; ++q) {
            klocal::LocalGroupInfo info = m.data->group_info(p, q);
            if (info.kind != GroupKind::finitely_generated || info.group.is_trivial()) continue;
            json g;
            g["point"] = p.id;
            g["p"] = q;
            json tor = json::array();
            for (const Int& t : info.group.invariant_factors()) tor.push_back(int_to_json(t));
            g["torsion"] = tor;
            g["free_rank"] = info.group.free_rank();
            groups.push_back(g);
        }
    out["groups"] = groups;
    json bnd = json::array();
    for (const auto& key : m.data->declared_boundaries()) {
        IntMatrix mat = m.data->boundary_matrix(key.from, key.to, key.p);
        json rows = json::array();
        for (std::size_t i = 0; i < mat.rows(); ++i) {
            json row = json::array();
            for (std::size_t c = 0; c < mat.cols(); ++c) row.push_back(int_to_json(mat(i, c)));
            rows.push_back(row);
        }
        bnd.push_back(json{{"from", key.from.id}, {"to", key.to.id}, {"p", key.p}, {"matrix", rows}});
    }
    out["boundaries"] = bnd;
    return out;
}

}  // namespace ttchow::toy
