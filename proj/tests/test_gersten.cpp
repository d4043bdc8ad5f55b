#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ttchow/gersten.hpp"
#include "ttchow/toymodels.hpp"

using namespace ttchow;
using namespace ttchow::gersten;
using zlin::FinAbGroup;

#ifndef TTCHOW_FIXTURES
#define TTCHOW_FIXTURES "fixtures"
#endif
#ifndef TTCHOW_TESTDATA
#define TTCHOW_TESTDATA "tests/data"
#endif

namespace {

struct Loaded {
    toy::LoadedModel m;
    std::shared_ptr<klocal::KLocalData> data;
};

Loaded load_fixture(const std::string& name, bool testdata = false) {
    std::string dir = testdata ? TTCHOW_TESTDATA : TTCHOW_FIXTURES;
    toy::LoadedModel m = toy::load(dir + "/" + name + ".json");
    auto data = klocal::default_negative_k(m.data);
    return {std::move(m), std::move(data)};
}

const space::EnumBound all = space::EnumBound::unbounded();

}  // namespace

TEST_CASE("cycle groups on toy models") {
    auto k4 = load_fixture("klein4");
    CHECK(zlin::groups_isomorphic(cycle_group(*k4.m.model, *k4.data, 0, all).group,
                                  FinAbGroup::cyclic(2)));
    CHECK(zlin::groups_isomorphic(cycle_group(*k4.m.model, *k4.data, -1, all).group,
                                  FinAbGroup::from_invariants({2, 2}, 0)));
    CHECK(cycle_group(*k4.m.model, *k4.data, -5, all).group.is_trivial());

    auto p1 = load_fixture("p1_mock");
    CHECK(cycle_group(*p1.m.model, *p1.data, -1, all).group.free_rank() == 4);
}

TEST_CASE("gersten condition on toy models") {
    auto p1 = load_fixture("p1_mock");
    CHECK(gersten_holds(*p1.m.model, *p1.data, 0, 0, all));
    CHECK(gersten_holds(*p1.m.model, *p1.data, -1, 0, all));
    CHECK(gersten_holds(*p1.m.model, *p1.data, -1, 1, all));
    CHECK(gersten_holds(*p1.m.model, *p1.data, 0, 1, all));

    auto broken = load_fixture("broken_gersten");
    BidegreeCheck c = gersten_check(*broken.m.model, *broken.data, 0, 0, all);
    CHECK(c.status == GerstenStatus::violated);
    CHECK(!c.detail.empty());

    auto k4 = load_fixture("klein4");
    CHECK(gersten_holds(*k4.m.model, *k4.data, 0, 0, all));

    // zero data: trivially true
    toy::LoadedModel empty = toy::load_from_string(
        R"({"schema_version":1,"points":[{"id":"a","dim":0}],"specializations":[],
            "window":{"lo":0,"hi":0},"groups":[]})",
        "empty");
    auto ed = klocal::default_negative_k(empty.data);
    CHECK(gersten_holds(*empty.model, *ed, 0, 0, all));
}

TEST_CASE("chow groups on toy models") {
    auto k4 = load_fixture("klein4");
    ChowResult ch0 = cap_chow_group(*k4.m.model, *k4.data, 0, all);
    ChowResult chm1 = cap_chow_group(*k4.m.model, *k4.data, -1, all);
    CHECK(zlin::groups_isomorphic(ch0.group, FinAbGroup::cyclic(2)));
    CHECK(zlin::groups_isomorphic(chm1.group, FinAbGroup::cyclic(2)));
    // plain == cap here (zero negative K-theory)
    CHECK(zlin::groups_isomorphic(chow_group(*k4.m.model, *k4.data, -1, all).group, chm1.group));

    auto p1 = load_fixture("p1_mock");
    ChowResult ch = chow_group(*p1.m.model, *p1.data, -1, all);
    CHECK(zlin::groups_isomorphic(ch.group, FinAbGroup::free_group(1)));
    CHECK(ch.method == "im(delta1), Gersten tail verified");

    auto chain2 = load_fixture("chain2");
    CHECK(chow_group(*chain2.m.model, *chain2.data, -1, all).group.is_trivial());

    // empty stratum
    CHECK(chow_group(*p1.m.model, *p1.data, -3, all).group.is_trivial());

    // broken gersten, no explicit generators: the quotient is not computable
    auto broken = load_fixture("broken_gersten");
    CHECK_THROWS_AS(chow_group(*broken.m.model, *broken.data, -1, all), MissingDataError);
}

TEST_CASE("explicit ker(i) generators substitute for the Gersten tail") {
    // broken_gersten plus an explicit rational-equivalence generator 2[x]
    toy::LoadedModel m = toy::load_from_string(R"({"schema_version":1,
      "points":[{"id":"eta","dim":0},{"id":"x","dim":-1}],
      "specializations":[["eta","x"]], "window":{"lo":0,"hi":1},
      "groups":[{"point":"eta","p":0,"free_rank":1},{"point":"x","p":0,"free_rank":1}],
      "ker_i_generators":[{"l":-1,"elements":[[{"point":"x","coords":[2]}]]}]})",
                                               "exp");
    auto data = klocal::default_negative_k(m.data);
    ChowResult ch = chow_group(*m.model, *data, -1, all);
    CHECK(zlin::groups_isomorphic(ch.group, FinAbGroup::cyclic(2)));
    CHECK(ch.method == "explicit ker(i) generators");
    ChowResult cap = cap_chow_group(*m.model, *data, -1, all);
    CHECK(zlin::groups_isomorphic(cap.group, FinAbGroup::cyclic(2)));
}

TEST_CASE("cap-cycle group differs from the cycle group when delta0 is nonzero") {
    auto capk = load_fixture("capk", true);
    ChowResult cap = cap_chow_group(*capk.m.model, *capk.data, 0, all);
    ChowResult plain = chow_group(*capk.m.model, *capk.data, 0, all);
    CHECK(zlin::groups_isomorphic(cap.group, FinAbGroup::cyclic(2)));
    CHECK(zlin::groups_isomorphic(plain.group, FinAbGroup::cyclic(4)));
    CHECK(!zlin::groups_isomorphic(cap.group, plain.group));
}

TEST_CASE("bloch formula on toy models") {
    auto k4 = load_fixture("klein4");
    BlochResult b1 = bloch_cohomology(*k4.m.model, *k4.data, 1, all);
    CHECK(zlin::groups_isomorphic(b1.group, FinAbGroup::cyclic(2)));
    CHECK(zlin::groups_isomorphic(b1.group, cap_chow_group(*k4.m.model, *k4.data, -1, all).group));
    BlochResult b0 = bloch_cohomology(*k4.m.model, *k4.data, 0, all);
    CHECK(zlin::groups_isomorphic(b0.group, FinAbGroup::cyclic(2)));

    auto p1 = load_fixture("p1_mock");
    BlochResult p1b = bloch_cohomology(*p1.m.model, *p1.data, 1, all);
    CHECK(zlin::groups_isomorphic(p1b.group, FinAbGroup::free_group(1)));

    auto broken = load_fixture("broken_gersten");
    CHECK_THROWS_AS(bloch_cohomology(*broken.m.model, *broken.data, 1, all), GerstenViolationError);
    // ... and the failure message names the offending bidegree
    try {
        bloch_cohomology(*broken.m.model, *broken.data, 1, all);
    } catch (const GerstenViolationError& e) {
        CHECK(std::string(e.what()).find("(0,0)") != std::string::npos);
    }
}

TEST_CASE("row cohomology off the diagonal is exposed raw") {
    auto p1 = load_fixture("p1_mock");
    // H^0 of the weight-1 row = ker(div) = units with zero divisor = 0 in this
    // free mock (constants are not tabulated)
    FinAbGroup h0 = row_cohomology(*p1.m.model, *p1.data, 1, 0, all);
    CHECK(h0.is_trivial());
    FinAbGroup h1 = row_cohomology(*p1.m.model, *p1.data, 1, 1, all);
    CHECK(zlin::groups_isomorphic(h1, FinAbGroup::free_group(1)));
    CHECK(row_cohomology(*p1.m.model, *p1.data, 1, 5, all).is_trivial());
}

TEST_CASE("d^2 = 0 fuzzed over random supported elements (>= 500 per model)") {
    std::mt19937_64 rng(0x5eedd2);
    for (const char* name : {"chain2", "klein4", "p1_mock", "broken_gersten", "point"}) {
        CAPTURE(name);
        auto fx = load_fixture(name);
        klocal::Window w = fx.data->window();
        auto pts = fx.m.model->enumerate(all);
        for (int iter = 0; iter < 500; ++iter) {
            // random supported element in a random grading
            int l = -(int)(rng() % 3);
            int p = int(w.lo + int(rng() % (unsigned)(w.hi - w.lo + 1)));
            klocal::SupportedElement s;
            s.l = l;
            s.p = p;
            for (const auto& q : pts) {
                if (fx.m.model->dim(q) != l) continue;
                auto info = fx.data->group_info(q, p);
                if (info.kind != klocal::GroupKind::finitely_generated) continue;
                std::vector<Int> c(info.group.rank());
                bool nz = false;
                for (auto& x : c) {
                    x = int(rng() % 7) - 3;
                    nz = nz || x != 0;
                }
                if (nz) s.entries.emplace(q, klocal::LocalValue::fg(std::move(c)));
            }
            if (s.entries.empty()) continue;
            auto mid_pts = space::points_of_dim(*fx.m.model, l - 1, all);
            auto low_pts = space::points_of_dim(*fx.m.model, l - 2, all);
            auto d1 = apply_boundary(*fx.m.model, *fx.data, s, mid_pts);
            auto d2 = apply_boundary(*fx.m.model, *fx.data, d1, low_pts);
            CHECK(d2.entries.empty());
        }
    }
    // chain3 has a genuinely two-step row
    auto c3 = load_fixture("chain3", true);
    auto pts1 = space::points_of_dim(*c3.m.model, -1, all);
    auto pts0 = space::points_of_dim(*c3.m.model, -2, all);
    for (int iter = 0; iter < 500; ++iter) {
        klocal::SupportedElement s;
        s.l = 0;
        s.p = 2;
        std::vector<Int> c{int(rng() % 9) - 4, int(rng() % 9) - 4};
        s.entries.emplace(space::Point{"x2"}, klocal::LocalValue::fg(std::move(c)));
        auto d1 = apply_boundary(*c3.m.model, *c3.data, s, pts1);
        auto d2 = apply_boundary(*c3.m.model, *c3.data, d1, pts0);
        CHECK(d2.entries.empty());
    }
}

TEST_CASE("flasqueness: sections over V lift to U along the canonical projections") {
    auto p1 = load_fixture("p1_mock");
    std::mt19937_64 rng(0x5eedf1);
    auto pts = space::points_of_dim(*p1.m.model, -1, all);
    for (int iter = 0; iter < 100; ++iter) {
        // random open U ⊇ V by removing random closed points
        std::vector<space::Point> zu, zv;
        for (const auto& q : pts) {
            if (rng() % 4 == 0) zu.push_back(q);
        }
        zv = zu;
        for (const auto& q : pts)
            if (rng() % 4 == 0 && std::find(zv.begin(), zv.end(), q) == zv.end()) zv.push_back(q);
        space::OpenSubset u{space::ThomasonSubset(zu)}, v{space::ThomasonSubset(zv)};
        // a random section over V
        klocal::SupportedElement s;
        s.l = -1;
        s.p = 0;
        for (const auto& q : pts) {
            if (!v.contains(*p1.m.model, q)) continue;
            int c = int(rng() % 5) - 2;
            if (c != 0) s.entries.emplace(q, klocal::LocalValue::fg({Int(c)}));
        }
        // the lift is literal: the same element read over U restricts back to s
        klocal::SupportedElement lift = s;  // extension by zero
        CHECK(lift.restricted_to(*p1.m.model, v).entries == s.entries);
        // monotone support under restriction
        CHECK(lift.restricted_to(*p1.m.model, v).entries.size() <= lift.entries.size());
        // restriction of the lift to V equals the section (projection)
        auto back = lift.restricted_to(*p1.m.model, u).restricted_to(*p1.m.model, v);
        CHECK(back.entries == s.entries);
    }
}
