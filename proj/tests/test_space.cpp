#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ttchow/space.hpp"

using namespace ttchow;
using namespace ttchow::space;

namespace {

std::shared_ptr<FinitePosetModel> chain3_krull() {
    // x0 < x1 < x2: x0 closed point, x2 generic; dims = Krull height
    return std::make_shared<FinitePosetModel>(
        "chain3", std::vector<Point>{{"x0"}, {"x1"}, {"x2"}}, std::map<std::string, std::string>{},
        std::vector<std::pair<Point, Point>>{{{"x1"}, {"x0"}}, {{"x2"}, {"x1"}}},
        std::map<std::string, int>{{"x0", 0}, {"x1", 1}, {"x2", 2}});
}

// random finite poset: edges only from higher to lower index, so acyclic
std::shared_ptr<FinitePosetModel> random_poset(std::mt19937_64& rng, int n, int* out_n = nullptr) {
    std::uniform_int_distribution<int> coin(0, 3);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({"p" + std::to_string(i)});
    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (coin(rng) == 0) pairs.push_back({pts[i], pts[j]});  // p_i ⤳ p_j
    std::map<std::string, int> dims;
    for (int i = 0; i < n; ++i) dims[pts[i].id] = 0;
    auto m = std::make_shared<FinitePosetModel>("rand", pts, std::map<std::string, std::string>{},
                                                pairs, dims);
    std::map<std::string, int> kd;
    for (const Point& p : *&pts) kd[p.id] = krull_dim(*m, p);
    m->set_dims(kd);
    if (out_n) *out_n = n;
    return m;
}

std::map<std::string, int> neg_codim_dims(const SpectralModel& m) {
    std::map<std::string, int> d;
    for (const Point& p : m.enumerate(EnumBound::unbounded())) d[p.id] = neg_codim(m, p);
    return d;
}

}  // namespace

TEST_CASE("krull_dim / neg_codim on chains and antichains") {
    auto m = chain3_krull();
    CHECK(krull_dim(*m, {"x2"}) == 2);
    CHECK(krull_dim(*m, {"x0"}) == 0);
    CHECK(neg_codim(*m, {"x0"}) == -2);
    CHECK(neg_codim(*m, {"x2"}) == 0);

    FinitePosetModel anti("anti", {{"a"}, {"b"}, {"c"}}, {}, {},
                          {{"a", 0}, {"b", 0}, {"c", 0}});
    for (auto id : {"a", "b", "c"}) {
        CHECK(krull_dim(anti, {id}) == 0);
        CHECK(neg_codim(anti, {id}) == 0);
    }
}

TEST_CASE("points_of_dim on a chain") {
    auto m = chain3_krull();
    auto top = points_of_dim(*m, 2, EnumBound::unbounded());
    REQUIRE(top.size() == 1);
    CHECK(top[0].id == "x2");
    CHECK(points_of_dim(*m, 5, EnumBound::unbounded()).empty());
}

TEST_CASE("is_dimension_function") {
    auto m = chain3_krull();
    CHECK(is_dimension_function(*m));

    FinitePosetModel constant("const2", {{"a"}, {"b"}}, {}, {{{"b"}, {"a"}}},
                              {{"a", 1}, {"b", 1}});
    CHECK(!is_dimension_function(constant));

    std::mt19937_64 rng(0x5eedaa);
    for (int iter = 0; iter < 100; ++iter) {
        auto r = random_poset(rng, 1 + int(rng() % 7));
        CHECK(is_dimension_function(*r));  // krull dims
        auto nc = neg_codim_dims(*r);
        r->set_dims(nc);
        CHECK(is_dimension_function(*r));  // neg_codim dims
    }
}

TEST_CASE("thomason subsets and open membership") {
    auto m = chain3_krull();
    ThomasonSubset z({{"x0"}});  // closure of the closed point = itself
    CHECK(z.contains(*m, {"x0"}));
    CHECK(!z.contains(*m, {"x1"}));
    OpenSubset u(z);
    CHECK(!u.contains(*m, {"x0"}));
    CHECK(u.contains(*m, {"x2"}));

    ThomasonSubset z1({{"x1"}});  // closure{x1} = {x0, x1}
    CHECK(z1.contains(*m, {"x0"}));
    CHECK(z1.contains(*m, {"x1"}));
    CHECK(!z1.contains(*m, {"x2"}));

    CHECK(is_open_point_set(*m, {{"x1"}, {"x2"}}));
    CHECK(!is_open_point_set(*m, {{"x0"}, {"x1"}}));  // not generization-closed
}

TEST_CASE("restrict_dim: whole space, neg_codim coincidence, Krull counterexample") {
    auto m = chain3_krull();

    auto whole = restrict_dim(m, OpenSubset{});
    CHECK(whole->enumerate(EnumBound::unbounded()).size() == 3);
    CHECK(whole->dim({"x1"}) == 1);

    // neg_codim version: restriction of values == recomputation on U
    std::map<std::string, int> nc = neg_codim_dims(*m);
    auto mneg = chain3_krull();
    mneg->set_dims(nc);
    OpenSubset u(ThomasonSubset({{"x0"}}));  // U = {x1, x2}
    auto restr = restrict_dim(std::shared_ptr<const SpectralModel>(mneg), u);
    CHECK(restr->dim({"x1"}) == -1);
    CHECK(neg_codim(*restr, {"x1"}) == -1);  // coincide
    CHECK(restr->dim({"x2"}) == 0);
    CHECK(neg_codim(*restr, {"x2"}) == 0);

    // Krull version fails: dim|_U keeps value 1 at x1 but the Krull dimension
    // recomputed inside U = {x1, x2} is 0
    auto mk = chain3_krull();
    auto restrk = restrict_dim(std::shared_ptr<const SpectralModel>(mk), u);
    CHECK(restrk->dim({"x1"}) == 1);
    CHECK(krull_dim(*restrk, {"x1"}) == 0);

    CHECK_THROWS_AS(restrict_dim(std::shared_ptr<const SpectralModel>(chain3_krull()),
                                 OpenSubset(ThomasonSubset({{"nosuch"}}))),
                    NotOpenError);
}

TEST_CASE("restriction composes and neg_codim invariance on random posets") {
    std::mt19937_64 rng(0x5eedbb);
    for (int iter = 0; iter < 100; ++iter) {
        auto r = random_poset(rng, 2 + int(rng() % 6));
        r->set_dims(neg_codim_dims(*r));
        auto pts = r->enumerate(EnumBound::unbounded());
        // random Thomason subsets Z2 ⊆ Z1 by picking generator sets
        std::vector<Point> g1, g2;
        for (const Point& p : pts) {
            if (rng() % 3 == 0) g1.push_back(p);
        }
        for (const Point& p : g1)
            if (rng() % 2 == 0) g2.push_back(p);
        OpenSubset u{ThomasonSubset(g2)}, v{ThomasonSubset(g1)};  // V ⊆ U

        std::shared_ptr<const SpectralModel> base = r;
        auto one_step = restrict_dim(base, v);
        auto two_step = restrict_dim(std::shared_ptr<const SpectralModel>(restrict_dim(base, u)), v);
        auto e1 = one_step->enumerate(EnumBound::unbounded());
        auto e2 = two_step->enumerate(EnumBound::unbounded());
        CHECK(e1 == e2);
        for (const Point& p : e1) CHECK(one_step->dim(p) == two_step->dim(p));

        // neg_codim coincidence on U (the restriction lemma for -codim)
        auto ru = restrict_dim(base, u);
        for (const Point& p : ru->enumerate(EnumBound::unbounded()))
            CHECK(ru->dim(p) == neg_codim(*ru, p));
    }
}

TEST_CASE("relative dimension 0: dim|_U(S ∩ U) <= dim(S)") {
    std::mt19937_64 rng(0x5eedcc);
    for (int iter = 0; iter < 100; ++iter) {
        auto r = random_poset(rng, 2 + int(rng() % 6));
        auto pts = r->enumerate(EnumBound::unbounded());
        std::vector<Point> zgen;
        for (const Point& p : pts)
            if (rng() % 3 == 0) zgen.push_back(p);
        OpenSubset u{ThomasonSubset(zgen)};
        // random support set S
        std::vector<Point> s;
        for (const Point& p : pts)
            if (rng() % 2 == 0) s.push_back(p);
        int dim_s = space::dim_neg_infty;
        for (const Point& p : s) dim_s = std::max(dim_s, r->dim(p));
        int dim_su = space::dim_neg_infty;
        for (const Point& p : s)
            if (u.contains(*r, p)) dim_su = std::max(dim_su, r->dim(p));
        CHECK(dim_su <= dim_s);
    }
}
