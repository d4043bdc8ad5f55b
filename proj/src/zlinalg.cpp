#include "ttchow/zlinalg.hpp"

#include <algorithm>
#include <sstream>

namespace ttchow::zlin {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("IntMatrix: entry count mismatch");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::of(const std::vector<std::vector<Int>>& rows) {
    std::size_t nr = rows.size();
    std::size_t nc = nr ? rows[0].size() : 0;
    IntMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        if (rows[i].size() != nc) throw std::invalid_argument("IntMatrix::of: ragged rows");
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
    return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("IntMatrix::apply: vector length mismatch");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

IntMatrix IntMatrix::col(std::size_t j) const { return submatrix(0, j, rows_, 1); }

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    IntMatrix r(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix r(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
    }
    return r;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
    IntMatrix r(a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) (*this)(dst, k) += f * (*this)(src, k);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, dst) += f * (*this)(k, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
}

std::size_t SmithNormalForm::rank() const {
    std::size_t n = std::min(s.rows(), s.cols()), r = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (s(i, i) != 0) ++r;
    return r;
}

std::vector<Int> SmithNormalForm::diagonal() const {
    std::size_t n = std::min(s.rows(), s.cols());
    std::vector<Int> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = s(i, i);
    return d;
}

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// locate smallest nonzero |entry| in s[i.., i..]; false if that block is zero
bool find_pivot(const IntMatrix& s, std::size_t i, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t r = i; r < s.rows(); ++r)
        for (std::size_t c = i; c < s.cols(); ++c) {
            if (s(r, c) == 0) continue;
            Int a = abs_int(s(r, c));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = r;
                pj = c;
            }
        }
    return found;
}

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& m) {
    SmithNormalForm out;
    out.s = m;
    out.u = IntMatrix::identity(m.rows());
    out.v = IntMatrix::identity(m.cols());
    IntMatrix& s = out.s;
    IntMatrix& u = out.u;
    IntMatrix& v = out.v;

    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pi = i, pj = i;
        if (!find_pivot(s, i, pi, pj)) break;
        s.swap_rows(i, pi);
        u.swap_rows(i, pi);
        s.swap_cols(i, pj);
        v.swap_cols(i, pj);

        for (;;) {
            // clear column i below the pivot
            bool dirty = false;
            for (std::size_t r = i + 1; r < s.rows(); ++r) {
                if (s(r, i) == 0) continue;
                Int q = s(r, i) / s(i, i);
                s.add_row_multiple(r, i, -q);
                u.add_row_multiple(r, i, -q);
                if (s(r, i) != 0) {
                    // remainder smaller than pivot: promote it
                    s.swap_rows(i, r);
                    u.swap_rows(i, r);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (std::size_t c = i + 1; c < s.cols(); ++c) {
                if (s(i, c) == 0) continue;
                Int q = s(i, c) / s(i, i);
                s.add_col_multiple(c, i, -q);
                v.add_col_multiple(c, i, -q);
                if (s(i, c) != 0) {
                    s.swap_cols(i, c);
                    v.swap_cols(i, c);
                    dirty = true;
                }
            }
            if (dirty) continue;

            // pivot divides the rest of its row and column now; enforce the
            // divisibility chain on the remaining block
            bool fixed = true;
            for (std::size_t r = i + 1; r < s.rows() && fixed; ++r)
                for (std::size_t c = i + 1; c < s.cols() && fixed; ++c)
                    if (s(r, c) % s(i, i) != 0) {
                        s.add_row_multiple(i, r, 1);
                        u.add_row_multiple(i, r, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }

        if (s(i, i) < 0) {
            s.negate_row(i);
            u.negate_row(i);
        }
    }
    return out;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square matrix required");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            a.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;  // Bareiss: division exact
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

IntMatrix kernel_lattice(const IntMatrix& m) {
    if (m.cols() == 0) return IntMatrix(0, 0);
    SmithNormalForm f = smith_normal_form(m);
    // m x = 0  <=>  s (v^{-1} x) = 0, so kernel basis = columns of v at zero diagonal spots
    std::vector<std::size_t> zero_cols;
    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (j >= n || f.s(j, j) == 0) zero_cols.push_back(j);
    IntMatrix k(m.cols(), zero_cols.size());
    for (std::size_t idx = 0; idx < zero_cols.size(); ++idx)
        for (std::size_t i = 0; i < m.cols(); ++i) k(i, idx) = f.v(i, zero_cols[idx]);
    return k;
}

IntMatrix preimage_lattice(const IntMatrix& m, const IntMatrix& l) {
    IntMatrix stacked = IntMatrix::hstack(m, l);
    IntMatrix ker = kernel_lattice(stacked);
    return ker.submatrix(0, 0, m.cols(), ker.cols());
}

FinAbGroup::FinAbGroup() : FinAbGroup(IntMatrix(0, 0)) {}

FinAbGroup::FinAbGroup(IntMatrix presentation)
    : presentation_(std::move(presentation)), snf_(smith_normal_form(presentation_)) {
    std::size_t diag = std::min(presentation_.rows(), presentation_.cols());
    for (std::size_t i = 0; i < presentation_.rows(); ++i) {
        if (i < diag && snf_.s(i, i) != 0) {
            if (snf_.s(i, i) > 1) {
                torsion_.push_back(snf_.s(i, i));
                torsion_positions_.push_back(i);
            }
        } else {
            ++free_rank_;
            free_positions_.push_back(i);
        }
    }
}

FinAbGroup FinAbGroup::free_group(std::size_t n) { return FinAbGroup(IntMatrix(n, 0)); }

FinAbGroup FinAbGroup::cyclic(const Int& d) {
    IntMatrix p(1, 1);
    p(0, 0) = d;
    return FinAbGroup(p);
}

FinAbGroup FinAbGroup::from_invariants(const std::vector<Int>& torsion, std::size_t free_rank) {
    std::size_t n = torsion.size() + free_rank;
    IntMatrix p(n, torsion.size());
    for (std::size_t i = 0; i < torsion.size(); ++i) p(i, i) = torsion[i];
    return FinAbGroup(p);
}

FinAbGroup FinAbGroup::direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
    IntMatrix p(a.rank() + b.rank(), a.presentation_.cols() + b.presentation_.cols());
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.presentation_.cols(); ++j) p(i, j) = a.presentation_(i, j);
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.presentation_.cols(); ++j)
            p(a.rank() + i, a.presentation_.cols() + j) = b.presentation_(i, j);
    return FinAbGroup(p);
}

Int FinAbGroup::order() const {
    if (free_rank_ > 0) throw std::logic_error("FinAbGroup::order: infinite group");
    Int n = 1;
    for (const Int& d : torsion_) n *= d;
    return n;
}

bool FinAbGroup::is_zero(const std::vector<Int>& x) const {
    if (x.size() != rank()) throw std::invalid_argument("FinAbGroup: coordinate length mismatch");
    // x in im(presentation)  <=>  (u x)_i ≡ 0 mod s_ii (s_ii = 0 forces exact zero)
    std::vector<Int> y = snf_.u.apply(x);
    std::size_t diag = std::min(presentation_.rows(), presentation_.cols());
    for (std::size_t i = 0; i < rank(); ++i) {
        if (i < diag && snf_.s(i, i) != 0) {
            if (y[i] % snf_.s(i, i) != 0) return false;
        } else if (y[i] != 0) {
            return false;
        }
    }
    return true;
}

bool FinAbGroup::elements_equal(const std::vector<Int>& x, const std::vector<Int>& y) const {
    std::vector<Int> d(rank());
    for (std::size_t i = 0; i < rank(); ++i) d[i] = x[i] - y[i];
    return is_zero(d);
}

std::vector<Int> FinAbGroup::canonical_coords(const std::vector<Int>& x) const {
    std::vector<Int> y = snf_.u.apply(x);
    std::vector<Int> out;
    out.reserve(torsion_positions_.size() + free_positions_.size());
    for (std::size_t k = 0; k < torsion_positions_.size(); ++k) {
        Int r = y[torsion_positions_[k]] % torsion_[k];
        if (r < 0) r += torsion_[k];
        out.push_back(r);
    }
    for (std::size_t i : free_positions_) out.push_back(y[i]);
    return out;
}

std::string FinAbGroup::invariants_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ == 1) {
        os << "Z";
        first = false;
    } else if (free_rank_ > 1) {
        os << "Z^" << free_rank_;
        first = false;
    }
    for (const Int& d : torsion_) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    return os.str();
}

bool groups_isomorphic(const FinAbGroup& a, const FinAbGroup& b) {
    return a.free_rank() == b.free_rank() && a.invariant_factors() == b.invariant_factors();
}

FinAbGroup tensor_groups(const FinAbGroup& a, const FinAbGroup& b) {
    // (Z^r + sum Z/d_i) (x) (Z^r' + sum Z/e_j)
    //  = Z^{r r'} + (sum Z/d_i)^{r'} + (sum Z/e_j)^{r} + sum_{i,j} Z/gcd(d_i, e_j)
    std::vector<Int> torsion;
    for (const Int& d : a.invariant_factors())
        for (std::size_t k = 0; k < b.free_rank(); ++k) torsion.push_back(d);
    for (const Int& e : b.invariant_factors())
        for (std::size_t k = 0; k < a.free_rank(); ++k) torsion.push_back(e);
    for (const Int& d : a.invariant_factors())
        for (const Int& e : b.invariant_factors()) torsion.push_back(boost::multiprecision::gcd(d, e));
    std::size_t n = torsion.size();
    IntMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, i) = torsion[i];
    FinAbGroup shaped(p);  // renormalizes into a divisibility chain
    return FinAbGroup::from_invariants(shaped.invariant_factors(),
                                       a.free_rank() * b.free_rank() + shaped.free_rank());
}

AbHom::AbHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
        throw WellDefinednessError("AbHom: matrix shape does not match presentations");
    for (std::size_t j = 0; j < source_.presentation().cols(); ++j) {
        std::vector<Int> rel(source_.rank());
        for (std::size_t i = 0; i < source_.rank(); ++i) rel[i] = source_.presentation()(i, j);
        if (!target_.is_zero(matrix_.apply(rel)))
            throw WellDefinednessError("AbHom: matrix does not respect source relations");
    }
}

AbHom AbHom::zero(const FinAbGroup& source, const FinAbGroup& target) {
    return AbHom(source, target, IntMatrix(target.rank(), source.rank()));
}

AbHom AbHom::identity(const FinAbGroup& g) { return AbHom(g, g, IntMatrix::identity(g.rank())); }

bool AbHom::is_zero_map() const {
    for (std::size_t j = 0; j < source_.rank(); ++j) {
        std::vector<Int> e(source_.rank());
        e[j] = 1;
        if (!target_.is_zero(matrix_.apply(e))) return false;
    }
    return true;
}

AbHom AbHom::compose_after(const AbHom& inner) const {
    return AbHom(inner.source(), target_, matrix_ * inner.matrix());
}

CokernelResult cokernel(const AbHom& h) {
    IntMatrix pres = IntMatrix::hstack(h.matrix(), h.target().presentation());
    FinAbGroup q(pres);
    AbHom proj(h.target(), q, IntMatrix::identity(h.target().rank()));
    return {q, proj};
}

namespace {

// Abstract group on the columns of `gens` (a generating set of a subgroup of the
// ambient lattice Z^n modulo ambient relations), with its inclusion hom.
Subgroup subgroup_from_generators(const FinAbGroup& ambient, const IntMatrix& gens) {
    // relations among the generators: w with gens*w ∈ relation lattice of ambient
    IntMatrix rels = preimage_lattice(gens, ambient.presentation());
    FinAbGroup g(rels);
    return {g, AbHom(g, ambient, gens)};
}

}  // namespace

Subgroup kernel(const AbHom& h) {
    // { x : M x ∈ relation lattice of target }, then quotient by source relations
    IntMatrix gens = preimage_lattice(h.matrix(), h.target().presentation());
    return subgroup_from_generators(h.source(), gens);
}

Subgroup preimage_subgroup(const AbHom& h, const Subgroup& sub) {
    IntMatrix span = IntMatrix::hstack(sub.inclusion.matrix(), h.target().presentation());
    IntMatrix gens = preimage_lattice(h.matrix(), span);
    return subgroup_from_generators(h.source(), gens);
}

FinAbGroup subquotient(const AbHom& h_in, const AbHom& h_out) {
    // containment check: h_out(h_in(g)) = 0 for every generator g
    for (std::size_t j = 0; j < h_in.source().rank(); ++j) {
        std::vector<Int> e(h_in.source().rank());
        e[j] = 1;
        if (!h_out.target().is_zero(h_out.apply(h_in.apply(e))))
            throw NotAComplexError("subquotient: im(h_in) not contained in ker(h_out)");
    }
    Subgroup k = kernel(h_out);
    // express ker(h_out) modulo im(h_in) + middle relations
    IntMatrix denom = IntMatrix::hstack(h_in.matrix(), h_in.target().presentation());
    IntMatrix rels = preimage_lattice(k.inclusion.matrix(), denom);
    return FinAbGroup(rels);
}

FinAbGroup quotient_by_image(const FinAbGroup& ambient, const IntMatrix& image_generators) {
    return FinAbGroup(IntMatrix::hstack(image_generators, ambient.presentation()));
}

}  // namespace ttchow::zlin
