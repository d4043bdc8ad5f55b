#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ttchow/gersten.hpp"
#include "ttchow/toymodels.hpp"

using namespace ttchow;
using namespace ttchow::toy;

#ifndef TTCHOW_FIXTURES
#define TTCHOW_FIXTURES "fixtures"
#endif
#ifndef TTCHOW_TESTDATA
#define TTCHOW_TESTDATA "tests/data"
#endif

namespace {
std::string fixture(const std::string& f) { return std::string(TTCHOW_FIXTURES) + "/" + f; }
std::string testdata(const std::string& f) { return std::string(TTCHOW_TESTDATA) + "/" + f; }
}  // namespace

TEST_CASE("all bundled fixtures load, validate, and satisfy d^2 = 0") {
    for (const char* name : {"point", "chain2", "klein4", "broken_gersten", "p1_mock"}) {
        CAPTURE(name);
        LoadedModel m = load(fixture(std::string(name) + ".json"));
        auto data = klocal::default_negative_k(m.data);
        klocal::ValidationReport rep =
            klocal::validate(*data, *m.model, space::EnumBound::unbounded(), m.pairing.get());
        CHECK_MESSAGE(rep.clean(), rep.to_string());
    }
    LoadedModel c3 = load(testdata("chain3.json"));
    auto data = klocal::default_negative_k(c3.data);
    CHECK(klocal::validate(*data, *c3.model, space::EnumBound::unbounded()).clean());
}

TEST_CASE("parse errors and validation errors are distinct") {
    CHECK_THROWS_AS(load_from_string("{ not json", "bad"), ParseError);
    CHECK_THROWS_AS(load_from_string("{\"schema_version\": 2, \"points\": []}", "bad"),
                    ValidationError);
    // unknown point in a specialization, reported with field context
    try {
        load_from_string(R"({"schema_version":1, "points":[{"id":"a","dim":0}],
                             "specializations": [["a","b"]], "window": {"lo":0,"hi":0}})",
                         "ctx");
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("specializations[0]") != std::string::npos);
    }
    // ill-defined boundary matrix (does not respect torsion)
    CHECK_THROWS_AS(
        load_from_string(R"({"schema_version":1,
          "points":[{"id":"a","dim":0},{"id":"b","dim":-1}],
          "specializations":[["a","b"]], "window":{"lo":0,"hi":1},
          "groups":[{"point":"a","p":1,"torsion":[2]},{"point":"b","p":0,"free_rank":1}],
          "boundaries":[{"from":"a","to":"b","p":1,"matrix":[[1]]}]})",
                         "ctx"),
        ValidationError);
    // non-bilinear pairing table: the left factor is Z/2 but the output is Z,
    // so 2·(gen ⊗ gen) -> 2 does not vanish and the table is ill-defined
    CHECK_THROWS_AS(
        load_from_string(R"({"schema_version":1,
          "points":[{"id":"a","dim":0},{"id":"c","dim":-1}],
          "specializations":[["a","c"]], "window":{"lo":0,"hi":0},
          "groups":[{"point":"a","p":0,"torsion":[2]},{"point":"c","p":0,"free_rank":1}],
          "pairing":{"unit":[{"point":"a","coords":[1]}],
                     "entries":[{"left":"a","right":"c","out":"c","table":[[[1]]]}]}})",
                         "ctx"),
        ValidationError);
}

TEST_CASE("validate flags boundaries on non-specialization pairs") {
    // a and b are incomparable, yet a boundary is declared between them
    LoadedModel m = load_from_string(R"({"schema_version":1,
      "points":[{"id":"a","dim":0},{"id":"b","dim":-1}],
      "specializations":[], "window":{"lo":0,"hi":1},
      "groups":[{"point":"a","p":1,"free_rank":1},{"point":"b","p":0,"free_rank":1}],
      "boundaries":[{"from":"a","to":"b","p":1,"matrix":[[1]]}]})",
                                     "ctx");
    klocal::ValidationReport rep = klocal::validate(*m.data, *m.model, space::EnumBound::unbounded());
    CHECK(!rep.clean());
    bool found = false;
    for (const auto& i : rep.issues) found = found || i.code == "boundary-support";
    CHECK(found);
}

TEST_CASE("validate flags a broken d^2") {
    LoadedModel m = load_from_string(R"({"schema_version":1,
      "points":[{"id":"x2","dim":0},{"id":"x1","dim":-1},{"id":"x0","dim":-2}],
      "specializations":[["x2","x1"],["x1","x0"],["x2","x0"]],
      "window":{"lo":0,"hi":2},
      "groups":[{"point":"x2","p":2,"free_rank":1},{"point":"x1","p":1,"free_rank":1},
                {"point":"x0","p":0,"free_rank":1}],
      "boundaries":[{"from":"x2","to":"x1","p":2,"matrix":[[1]]},
                    {"from":"x1","to":"x0","p":1,"matrix":[[1]]}]})",
                                     "ctx");
    auto data = klocal::default_negative_k(m.data);
    klocal::ValidationReport rep = klocal::validate(*data, *m.model, space::EnumBound::unbounded());
    bool found = false;
    for (const auto& i : rep.issues) found = found || i.code == "d-squared";
    CHECK(found);
}

TEST_CASE("round-trip: serialize(load(f)) is semantically equal to f") {
    for (const char* name : {"point", "chain2", "klein4", "p1_mock"}) {
        CAPTURE(name);
        LoadedModel a = load(fixture(std::string(name) + ".json"));
        nlohmann::json ser = serialize(a);
        LoadedModel b = load_from_string(ser.dump(), "roundtrip");
        auto pa = a.model->enumerate(space::EnumBound::unbounded());
        auto pb = b.model->enumerate(space::EnumBound::unbounded());
        REQUIRE(pa.size() == pb.size());
        for (const auto& p : pa) {
            CHECK(b.model->contains(p));
            CHECK(a.model->dim(p) == b.model->dim(p));
        }
        for (const auto& x : pa)
            for (const auto& y : pa) CHECK(a.model->specializes(x, y) == b.model->specializes(x, y));
        klocal::Window wa = a.data->window();
        for (const auto& p : pa)
            for (int q = wa.lo; q <= wa.hi; ++q) {
                auto ga = a.data->group_info(p, q);
                auto gb = b.data->group_info(p, q);
                CHECK(ga.kind == gb.kind);
                if (ga.kind == klocal::GroupKind::finitely_generated)
                    CHECK(zlin::groups_isomorphic(ga.group, gb.group));
                for (const auto& p2 : pa) {
                    if (!a.model->specializes(p, p2) || a.model->dim(p2) != a.model->dim(p) - 1)
                        continue;
                    CHECK(a.data->boundary_matrix(p, p2, q) == b.data->boundary_matrix(p, p2, q));
                }
            }
    }
}

TEST_CASE("default_negative_k is idempotent and preserves explicit data") {
    LoadedModel m = load(testdata("capk.json"));
    auto d1 = klocal::default_negative_k(m.data);
    auto d2 = klocal::default_negative_k(d1);
    CHECK(d1 == d2);  // second application is a no-op
    // explicit nonzero K_{-1} survives
    auto info = d1->group_info({"x"}, -1);
    CHECK(info.kind == klocal::GroupKind::finitely_generated);
    CHECK(zlin::groups_isomorphic(info.group, zlin::FinAbGroup::cyclic(2)));
    // below the window everything is zero
    CHECK(d1->group_info({"x"}, -5).kind == klocal::GroupKind::zero);
}
