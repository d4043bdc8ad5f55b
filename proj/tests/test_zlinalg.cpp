#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ttchow/zlinalg.hpp"

using namespace ttchow;
using namespace ttchow::zlin;

namespace {

// Independent oracle: invariant factors through gcds of k x k minors.
// d_1 * ... * d_k = gcd of all k x k minors.
Int gcd_of_minors(const IntMatrix& m, std::size_t k) {
    std::vector<std::size_t> rowsel(k), colsel(k);
    Int g = 0;
    std::vector<std::size_t> ridx, cidx;
    // enumerate k-subsets of rows and columns
    std::vector<bool> rmask(m.rows(), false), cmask(m.cols(), false);
    std::fill(rmask.begin(), rmask.begin() + k, true);
    do {
        ridx.clear();
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (rmask[i]) ridx.push_back(i);
        std::vector<bool> cm(m.cols(), false);
        std::fill(cm.begin(), cm.begin() + k, true);
        do {
            cidx.clear();
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (cm[j]) cidx.push_back(j);
            IntMatrix sub(k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(ridx[a], cidx[b]);
            g = boost::multiprecision::gcd(g, determinant(sub));
        } while (std::prev_permutation(cm.begin(), cm.end()));
    } while (std::prev_permutation(rmask.begin(), rmask.end()));
    return g < 0 ? Int(-g) : g;
}

std::vector<Int> invariants_by_minor_oracle(const IntMatrix& m) {
    std::size_t n = std::min(m.rows(), m.cols());
    std::vector<Int> dets(n + 1);
    dets[0] = 1;
    std::vector<Int> inv;
    for (std::size_t k = 1; k <= n; ++k) {
        dets[k] = gcd_of_minors(m, k);
        if (dets[k] == 0) break;
        inv.push_back(dets[k] / dets[k - 1]);
    }
    return inv;  // nonzero invariant factors d_1, d_2, ... including 1's
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t maxdim, int span) {
    std::uniform_int_distribution<std::size_t> dim(1, maxdim);
    std::uniform_int_distribution<int> ent(-span, span);
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = ent(rng);
    return m;
}

void check_snf_contract(const IntMatrix& m) {
    SmithNormalForm f = smith_normal_form(m);
    CHECK(f.u * m * f.v == f.s);
    Int du = determinant(f.u), dv = determinant(f.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    // diagonal, nonnegative, divisibility chain
    auto d = f.diagonal();
    for (std::size_t i = 0; i < f.s.rows(); ++i)
        for (std::size_t j = 0; j < f.s.cols(); ++j)
            if (i != j) CHECK(f.s(i, j) == 0);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        CHECK(d[i] >= 0);
        if (d[i] == 0) CHECK(d[i + 1] == 0);
        if (d[i] != 0 && d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
    }
}

}  // namespace

TEST_CASE("snf: identity, frozen 2x2, zero") {
    IntMatrix id = IntMatrix::identity(3);
    SmithNormalForm f = smith_normal_form(id);
    CHECK(f.s == id);

    // [[2,4],[6,8]]: minor oracle gives d1 = gcd(2,4,6,8) = 2, d1*d2 = |det| = 8
    IntMatrix m = IntMatrix::of({{2, 4}, {6, 8}});
    CHECK(invariants_by_minor_oracle(m) == std::vector<Int>{2, 4});
    SmithNormalForm g = smith_normal_form(m);
    CHECK(g.s(0, 0) == 2);
    CHECK(g.s(1, 1) == 4);
    check_snf_contract(m);

    IntMatrix z(2, 3);
    CHECK(smith_normal_form(z).s.is_zero());
}

TEST_CASE("snf: fuzz contract up to 8x8 and minor oracle up to 4x4") {
    std::mt19937_64 rng(0x5eed01);
    for (int iter = 0; iter < 1200; ++iter) {
        IntMatrix m = random_matrix(rng, 8, 20);
        check_snf_contract(m);
    }
    for (int iter = 0; iter < 300; ++iter) {
        IntMatrix m = random_matrix(rng, 4, 9);
        SmithNormalForm f = smith_normal_form(m);
        std::vector<Int> got;
        for (const Int& d : f.diagonal())
            if (d != 0) got.push_back(d);
        CHECK(got == invariants_by_minor_oracle(m));
    }
}

TEST_CASE("FinAbGroup normal forms") {
    CHECK(FinAbGroup::cyclic(6).invariants_string() == "Z/6");
    CHECK(FinAbGroup::free_group(2).invariants_string() == "Z^2");
    CHECK(FinAbGroup().invariants_string() == "0");
    // Z/2 + Z/3 = Z/6 in normal form
    FinAbGroup g = FinAbGroup::direct_sum(FinAbGroup::cyclic(2), FinAbGroup::cyclic(3));
    CHECK(groups_isomorphic(g, FinAbGroup::cyclic(6)));
    CHECK(g.order() == 6);

    FinAbGroup z4 = FinAbGroup::cyclic(4);
    CHECK(z4.is_zero({Int(4)}));
    CHECK(z4.is_zero({Int(-8)}));
    CHECK(!z4.is_zero({Int(2)}));
    CHECK(z4.elements_equal({Int(5)}, {Int(1)}));
}

TEST_CASE("cokernel: x2, x0, x1 on Z") {
    FinAbGroup z = FinAbGroup::free_group(1);
    auto mul = [&](int k) { return AbHom(z, z, IntMatrix::of({{k}})); };
    CHECK(groups_isomorphic(cokernel(mul(2)).group, FinAbGroup::cyclic(2)));
    CHECK(groups_isomorphic(cokernel(mul(0)).group, z));
    CHECK(cokernel(mul(1)).group.is_trivial());
    // projection is onto and respects the x2 relation
    auto c = cokernel(mul(2));
    CHECK(c.group.is_zero(c.projection.apply({Int(2)})));
    CHECK(!c.group.is_zero(c.projection.apply({Int(1)})));
}

TEST_CASE("cokernel rejects ill-defined homs") {
    FinAbGroup z2 = FinAbGroup::cyclic(2);
    FinAbGroup z = FinAbGroup::free_group(1);
    CHECK_THROWS_AS(AbHom(z2, z, IntMatrix::of({{1}})), WellDefinednessError);
}

TEST_CASE("kernel: x2 on Z, projection, Z/4 -> Z/2") {
    FinAbGroup z = FinAbGroup::free_group(1);
    CHECK(kernel(AbHom(z, z, IntMatrix::of({{2}}))).group.is_trivial());

    FinAbGroup z2free = FinAbGroup::free_group(2);
    Subgroup k = kernel(AbHom(z2free, z, IntMatrix::of({{1, 0}})));
    CHECK(groups_isomorphic(k.group, z));

    // reduction Z/4 -> Z/2: enumeration oracle says the kernel has 2 of the 4 elements
    FinAbGroup z4 = FinAbGroup::cyclic(4), z2 = FinAbGroup::cyclic(2);
    AbHom red(z4, z2, IntMatrix::of({{1}}));
    int in_kernel = 0;
    for (int e = 0; e < 4; ++e)
        if (z2.is_zero(red.apply({Int(e)}))) ++in_kernel;
    CHECK(in_kernel == 2);
    Subgroup kk = kernel(red);
    CHECK(groups_isomorphic(kk.group, z2));
    // the inclusion lands in the kernel
    for (std::size_t j = 0; j < kk.group.rank(); ++j) {
        std::vector<Int> e(kk.group.rank());
        e[j] = 1;
        CHECK(z2.is_zero(red.apply(kk.inclusion.apply(e))));
    }
}

TEST_CASE("preimage_subgroup: id/2Z, x2/4Z, whole target") {
    FinAbGroup z = FinAbGroup::free_group(1);
    auto sub_of_z = [&](int n) {
        FinAbGroup g = FinAbGroup::free_group(1);
        return Subgroup{g, AbHom(g, z, IntMatrix::of({{n}}))};
    };
    // lattice-saturation oracle: {x : 2x in 4Z} = 2Z; {x : x in 2Z} = 2Z
    Subgroup p1 = preimage_subgroup(AbHom::identity(z), sub_of_z(2));
    CHECK(groups_isomorphic(p1.group, z));
    CHECK(p1.inclusion.matrix()(0, 0) % 2 == 0);

    Subgroup p2 = preimage_subgroup(AbHom(z, z, IntMatrix::of({{2}})), sub_of_z(4));
    CHECK(groups_isomorphic(p2.group, z));
    Int gen = p2.inclusion.matrix()(0, 0);
    CHECK((gen == 2 || gen == -2));

    Subgroup p3 = preimage_subgroup(AbHom(z, z, IntMatrix::of({{2}})), sub_of_z(1));
    CHECK(groups_isomorphic(p3.group, z));
    Int g3 = p3.inclusion.matrix()(0, 0);
    CHECK((g3 == 1 || g3 == -1));
}

TEST_CASE("tensor_groups: rules and enumeration oracle") {
    FinAbGroup z = FinAbGroup::free_group(1);
    FinAbGroup z2 = FinAbGroup::cyclic(2);
    CHECK(groups_isomorphic(tensor_groups(z, z2), z2));
    CHECK(tensor_groups(FinAbGroup(), z2).is_trivial());
    // Z/4 (x) Z/6 = Z/gcd(4,6) = Z/2; enumeration oracle: the image of the bilinear
    // map (a,b) -> ab mod 2 generates a group of order 2
    FinAbGroup t = tensor_groups(FinAbGroup::cyclic(4), FinAbGroup::cyclic(6));
    CHECK(groups_isomorphic(t, z2));
    CHECK(t.order() == boost::multiprecision::gcd(Int(4), Int(6)));
}

TEST_CASE("tensor_groups: commutative, distributes over direct sum") {
    std::mt19937_64 rng(0x5eed02);
    std::uniform_int_distribution<int> d(0, 6);
    for (int iter = 0; iter < 60; ++iter) {
        FinAbGroup a = FinAbGroup(random_matrix(rng, 3, 5));
        FinAbGroup b = FinAbGroup(random_matrix(rng, 3, 5));
        FinAbGroup c = FinAbGroup(random_matrix(rng, 2, 5));
        CHECK(groups_isomorphic(tensor_groups(a, b), tensor_groups(b, a)));
        CHECK(groups_isomorphic(tensor_groups(a, FinAbGroup::direct_sum(b, c)),
                                FinAbGroup::direct_sum(tensor_groups(a, b), tensor_groups(a, c))));
    }
}

TEST_CASE("subquotient: middle homology") {
    FinAbGroup z = FinAbGroup::free_group(1);
    AbHom zz0(z, z, IntMatrix::of({{0}}));
    CHECK(groups_isomorphic(subquotient(zz0, zz0), z));

    // Z --x2--> Z --0--> 0 has homology Z/2 (SNF oracle: coker of x2)
    FinAbGroup zero;
    AbHom x2(z, z, IntMatrix::of({{2}}));
    AbHom to0(z, zero, IntMatrix(0, 1));
    CHECK(groups_isomorphic(subquotient(x2, to0), FinAbGroup::cyclic(2)));

    // exact pair: Z --x1--> Z --0--> 0
    AbHom x1(z, z, IntMatrix::of({{1}}));
    CHECK(subquotient(x1, to0).is_trivial());

    // not a complex
    CHECK_THROWS_AS(subquotient(x1, x1), NotAComplexError);
}

TEST_CASE("subquotient(0,0) over G equals G") {
    std::mt19937_64 rng(0x5eed03);
    for (int iter = 0; iter < 40; ++iter) {
        FinAbGroup g(random_matrix(rng, 4, 6));
        AbHom z1 = AbHom::zero(FinAbGroup::free_group(1), g);
        AbHom z2 = AbHom::zero(g, FinAbGroup::free_group(1));
        CHECK(groups_isomorphic(subquotient(z1, z2), g));
    }
}

TEST_CASE("kernel/cokernel exactness fuzz") {
    // for random homs h: Z^a -> Z^b, order/rank bookkeeping: rank(source) =
    // rank(ker h) + rank(im h) over the free parts
    std::mt19937_64 rng(0x5eed04);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    std::uniform_int_distribution<int> ent(-6, 6);
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t a = dim(rng), b = dim(rng);
        IntMatrix m(b, a);
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < a; ++j) m(i, j) = ent(rng);
        AbHom h(FinAbGroup::free_group(a), FinAbGroup::free_group(b), m);
        std::size_t r = smith_normal_form(m).rank();
        CHECK(kernel(h).group.free_rank() == a - r);
        CHECK(cokernel(h).group.free_rank() == b - r);
    }
}
