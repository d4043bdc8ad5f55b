#pragma once

// Exact arithmetic of finitely generated abelian groups: integer matrices,
// Smith normal form, groups presented by relation matrices, homomorphisms,
// kernels/cokernels/subquotients. Everything is arbitrary precision.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttchow {

using Int = boost::multiprecision::cpp_int;

struct WellDefinednessError : std::runtime_error {
    explicit WellDefinednessError(const std::string& m) : std::runtime_error(m) {}
};
struct NotAComplexError : std::runtime_error {
    explicit NotAComplexError(const std::string& m) : std::runtime_error(m) {}
};

namespace zlin {

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    // row-major initializer, e.g. IntMatrix::of({{2,4},{6,8}})
    static IntMatrix of(const std::vector<std::vector<Int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;
    bool is_zero() const;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-() const;
    std::vector<Int> apply(const std::vector<Int>& x) const;  // matrix * column vector

    IntMatrix transposed() const;
    IntMatrix col(std::size_t j) const;
    IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& f);  // row dst += f*row src
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& f);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

struct SmithNormalForm {
    IntMatrix u;  // unimodular, rows x rows
    IntMatrix s;  // diagonal, d1 | d2 | ..., nonnegative
    IntMatrix v;  // unimodular, cols x cols
    // invariant: u * m * v == s
    std::size_t rank() const;
    std::vector<Int> diagonal() const;
};

// u*m*v = s with u,v unimodular and s = diag(d1, d2, ...), d1 | d2 | ... >= 0.
// Smallest-absolute-value pivoting, no modular arithmetic.
SmithNormalForm smith_normal_form(const IntMatrix& m);

// Fraction-free (Bareiss) determinant; exact.
Int determinant(const IntMatrix& m);

// Z-basis of { x : m x = 0 }, returned as matrix columns. May be empty (0 cols).
IntMatrix kernel_lattice(const IntMatrix& m);

// Generators (as columns) of { x : m x in column-span(l) }.
IntMatrix preimage_lattice(const IntMatrix& m, const IntMatrix& l);

// A finitely generated abelian group, presented as Z^rank / column-span(presentation).
// Invariant factors are computed eagerly; elements are coordinate vectors on the
// original generators and compared through canonical coordinates.
class FinAbGroup {
public:
    FinAbGroup();  // the zero group
    explicit FinAbGroup(IntMatrix presentation);

    static FinAbGroup free_group(std::size_t n);
    static FinAbGroup cyclic(const Int& d);                       // Z/d (d = 0 gives Z)
    static FinAbGroup from_invariants(const std::vector<Int>& torsion, std::size_t free_rank);
    static FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

    std::size_t rank() const { return presentation_.rows(); }  // number of generators
    const IntMatrix& presentation() const { return presentation_; }

    const std::vector<Int>& invariant_factors() const { return torsion_; }  // each > 1, d1 | d2 | ...
    std::size_t free_rank() const { return free_rank_; }
    bool is_trivial() const { return torsion_.empty() && free_rank_ == 0; }
    bool is_finite() const { return free_rank_ == 0; }
    Int order() const;  // throws if infinite

    // Does x (coords on generators) lie in the relation lattice?
    bool is_zero(const std::vector<Int>& x) const;
    bool elements_equal(const std::vector<Int>& x, const std::vector<Int>& y) const;
    // Canonical coordinates: torsion coords reduced into [0, d_i), then free coords.
    std::vector<Int> canonical_coords(const std::vector<Int>& x) const;

    std::string invariants_string() const;  // e.g. "Z^2 + Z/2 + Z/4", "0"

private:
    IntMatrix presentation_;
    SmithNormalForm snf_;           // SNF of the presentation (change-of-basis record)
    std::vector<Int> torsion_;
    std::size_t free_rank_ = 0;
    std::vector<std::size_t> torsion_positions_;  // row indices with s_ii > 1
    std::vector<std::size_t> free_positions_;     // row indices with s_ii == 0 (or beyond diag)
};

bool groups_isomorphic(const FinAbGroup& a, const FinAbGroup& b);

// a (x)_Z b through invariant factors (gcd rule on torsion).
FinAbGroup tensor_groups(const FinAbGroup& a, const FinAbGroup& b);

// Homomorphism between presented groups; the matrix acts on the chosen generators.
// Well-definedness (matrix carries source relations into target relations) is checked.
class AbHom {
public:
    AbHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix);

    static AbHom zero(const FinAbGroup& source, const FinAbGroup& target);
    static AbHom identity(const FinAbGroup& g);

    const FinAbGroup& source() const { return source_; }
    const FinAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    std::vector<Int> apply(const std::vector<Int>& x) const { return matrix_.apply(x); }
    bool is_zero_map() const;

    AbHom compose_after(const AbHom& inner) const;  // this ∘ inner

private:
    FinAbGroup source_, target_;
    IntMatrix matrix_;
};

// A subgroup of an ambient presented group, carried by its inclusion.
struct Subgroup {
    FinAbGroup group;
    AbHom inclusion;  // group -> ambient
};

struct CokernelResult {
    FinAbGroup group;
    AbHom projection;  // target(h) -> group
};

CokernelResult cokernel(const AbHom& h);
Subgroup kernel(const AbHom& h);

// h^{-1}(sub) for a subgroup of target(h), returned with its inclusion into source(h).
Subgroup preimage_subgroup(const AbHom& h, const Subgroup& sub);

// ker(h_out)/im(h_in); checks im(h_in) ⊆ ker(h_out) and throws NotAComplexError otherwise.
FinAbGroup subquotient(const AbHom& h_in, const AbHom& h_out);

// ambient / (subgroup generated by the given columns), in normal form.
FinAbGroup quotient_by_image(const FinAbGroup& ambient, const IntMatrix& image_generators);

}  // namespace zlin
}  // namespace ttchow
