#pragma once

// Arithmetic over prime fields F_q (q <= 97): dense univariate polynomials,
// factorization (squarefree / distinct-degree / equal-degree), extension
// fields F_q[s]/(h) and polynomials over them. Everything is exact and
// deterministic; the equal-degree splitting uses a fixed-seed generator.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttchow::var {

struct Fq {
    int q = 2;
    bool operator==(const Fq&) const = default;
};

// validates primality and the supported range
Fq make_fq(int q);

class FqPoly {
public:
    FqPoly() : q_{2} {}
    FqPoly(Fq f, std::vector<int> coeffs);  // coeffs[i] multiplies x^i; reduced mod q

    static FqPoly zero(Fq f) { return FqPoly(f, {}); }
    static FqPoly one(Fq f) { return FqPoly(f, {1}); }
    static FqPoly constant(Fq f, int c) { return FqPoly(f, {c}); }
    static FqPoly variable(Fq f) { return FqPoly(f, {0, 1}); }
    // monic polynomial of the given degree whose lower coefficients are the
    // base-q digits of `counter` (canonical enumeration order)
    static FqPoly monic_from_counter(Fq f, int degree, std::uint64_t counter);

    Fq field() const { return q_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return int(coeffs_.size()) - 1; }  // -1 for the zero polynomial
    int coeff(int i) const { return (i >= 0 && i < int(coeffs_.size())) ? coeffs_[i] : 0; }
    int leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
    bool is_monic() const { return leading() == 1; }
    bool is_constant() const { return coeffs_.size() <= 1; }

    FqPoly monic() const;  // divide by the leading coefficient

    FqPoly operator+(const FqPoly& o) const;
    FqPoly operator-(const FqPoly& o) const;
    FqPoly operator*(const FqPoly& o) const;
    FqPoly scaled(int c) const;
    std::pair<FqPoly, FqPoly> divmod(const FqPoly& d) const;
    FqPoly operator%(const FqPoly& d) const { return divmod(d).second; }
    FqPoly operator/(const FqPoly& d) const { return divmod(d).first; }
    bool operator==(const FqPoly& o) const = default;

    FqPoly derivative() const;
    int eval(int x) const;
    FqPoly pow_mod(std::uint64_t e, const FqPoly& mod) const;

    static FqPoly gcd(const FqPoly& a, const FqPoly& b);  // monic
    // g = gcd, plus s,t with s*a + t*b = g
    static std::array<FqPoly, 3> extended_gcd(const FqPoly& a, const FqPoly& b);

    std::string to_string(const std::string& var = "t") const;

private:
    Fq q_;
    std::vector<int> coeffs_;
    void trim();
};

struct UnivariateFactorization {
    int unit = 1;                                  // leading coefficient
    std::vector<std::pair<FqPoly, int>> factors;   // monic irreducible, multiplicity; sorted
};

// exact factorization; throws std::invalid_argument on the zero polynomial
UnivariateFactorization factor_univariate(const FqPoly& f);
bool is_irreducible(const FqPoly& f);

// parse "t^2+2*t+1" style univariate polynomials (variable name given)
FqPoly parse_univariate(Fq f, const std::string& text, const std::string& var);

// ---- extension fields ----

// K = F_q[s]/(h) for h monic irreducible (degree >= 1). Elements are reduced
// FqPoly representatives.
class ExtField {
public:
    explicit ExtField(FqPoly modulus);

    using Elt = FqPoly;

    Fq base() const { return modulus_.field(); }
    int degree() const { return modulus_.degree(); }
    const FqPoly& modulus() const { return modulus_; }
    std::uint64_t order() const;  // q^degree; asserted to fit

    Elt reduce(const FqPoly& a) const { return a % modulus_; }
    Elt zero() const { return FqPoly::zero(base()); }
    Elt one() const { return FqPoly::one(base()); }
    Elt from_int(int c) const { return FqPoly::constant(base(), c); }
    Elt generator() const { return reduce(FqPoly::variable(base())); }

    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt mul(const Elt& a, const Elt& b) const { return reduce(a * b); }
    Elt neg(const Elt& a) const { return FqPoly::zero(base()) - a; }
    Elt inv(const Elt& a) const;
    Elt pow(const Elt& a, std::uint64_t e) const;
    bool is_zero(const Elt& a) const { return a.is_zero(); }

    // lift an F_q[t] polynomial through t -> a
    Elt eval_poly(const FqPoly& f, const Elt& a) const;

    // all elements in counter order (throws if the field is unreasonably big)
    std::vector<Elt> all_elements() const;
    // an element of full multiplicative order, smallest in counter order
    Elt primitive_element() const;
    std::uint64_t element_order(const Elt& a) const;

private:
    FqPoly modulus_;
};

// dense polynomial over an extension field
class ExtPoly {
public:
    explicit ExtPoly(const ExtField* k) : k_(k) {}
    ExtPoly(const ExtField* k, std::vector<ExtField::Elt> coeffs);

    const ExtField& field() const { return *k_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return int(coeffs_.size()) - 1; }
    const ExtField::Elt& coeff(int i) const;
    ExtField::Elt leading() const;
    bool is_monic() const;

    static ExtPoly zero(const ExtField* k) { return ExtPoly(k); }
    static ExtPoly constant(const ExtField* k, ExtField::Elt c);
    static ExtPoly variable(const ExtField* k);
    static ExtPoly from_base(const ExtField* k, const FqPoly& f);  // coefficients lifted

    ExtPoly operator+(const ExtPoly& o) const;
    ExtPoly operator-(const ExtPoly& o) const;
    ExtPoly operator*(const ExtPoly& o) const;
    std::pair<ExtPoly, ExtPoly> divmod(const ExtPoly& d) const;
    ExtPoly monic() const;
    ExtPoly pow_mod(std::uint64_t e, const ExtPoly& mod) const;
    static ExtPoly gcd(const ExtPoly& a, const ExtPoly& b);  // monic
    ExtField::Elt eval(const ExtField::Elt& a) const;

    bool operator==(const ExtPoly& o) const { return coeffs_ == o.coeffs_; }
    std::string to_string(const std::string& var, const std::string& base_var) const;

private:
    const ExtField* k_;
    std::vector<ExtField::Elt> coeffs_;
    void trim();
};

bool is_irreducible_ext(const ExtPoly& g);

// minimal polynomial of a over F_q, monic, via linear algebra on powers
FqPoly minimal_polynomial(const ExtField& k, const ExtField::Elt& a);

}  // namespace ttchow::var
