#include "ttchow/fq.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>
#include <utility>

namespace ttchow::var {

namespace {

int mod_reduce(long long a, int q) {
    long long r = a % q;
    return int(r < 0 ? r + q : r);
}

int mod_inv(int a, int q) {
    // extended euclid on ints
    int t = 0, newt = 1, r = q, newr = mod_reduce(a, q);
    while (newr != 0) {
        int quo = r / newr;
        t = std::exchange(newt, t - quo * newt);
        r = std::exchange(newr, r - quo * newr);
    }
    if (r != 1) throw std::invalid_argument("mod_inv: not invertible");
    return mod_reduce(t, q);
}

std::uint64_t checked_pow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::uint64_t(1) << 62) / b)
            throw std::overflow_error("field order does not fit in 64 bits");
        r *= b;
    }
    return r;
}

}  // namespace

Fq make_fq(int q) {
    if (q < 2 || q > 97) throw std::invalid_argument("q must be a prime in [2, 97]");
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) throw std::invalid_argument("q must be prime, got " + std::to_string(q));
    return Fq{q};
}

FqPoly::FqPoly(Fq f, std::vector<int> coeffs) : q_(f), coeffs_(std::move(coeffs)) {
    for (int& c : coeffs_) c = mod_reduce(c, q_.q);
    trim();
}

void FqPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FqPoly FqPoly::monic_from_counter(Fq f, int degree, std::uint64_t counter) {
    std::vector<int> c(degree + 1);
    c[degree] = 1;
    for (int i = 0; i < degree; ++i) {
        c[i] = int(counter % f.q);
        counter /= f.q;
    }
    return FqPoly(f, std::move(c));
}

FqPoly FqPoly::monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(mod_inv(leading(), q_.q));
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
    std::vector<int> c(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(int(i)) + o.coeff(int(i));
    return FqPoly(q_, std::move(c));
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
    std::vector<int> c(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(int(i)) - o.coeff(int(i));
    return FqPoly(q_, std::move(c));
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(q_);
    std::vector<int> c(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] = mod_reduce(c[i + j] + (long long)coeffs_[i] * o.coeffs_[j], q_.q);
    }
    return FqPoly(q_, std::move(c));
}

FqPoly FqPoly::scaled(int c) const {
    std::vector<int> out(coeffs_);
    for (int& x : out) x = mod_reduce((long long)x * c, q_.q);
    return FqPoly(q_, std::move(out));
}

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("FqPoly: division by zero");
    FqPoly r = *this;
    if (r.degree() < d.degree()) return {zero(q_), r};
    int inv_lead = mod_inv(d.leading(), q_.q);
    std::vector<int> quo(r.degree() - d.degree() + 1);
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        int c = mod_reduce((long long)r.leading() * inv_lead, q_.q);
        quo[k] = c;
        std::vector<int> sub(k + d.degree() + 1);
        for (int i = 0; i <= d.degree(); ++i)
            sub[k + i] = mod_reduce((long long)c * d.coeff(i), q_.q);
        r = r - FqPoly(q_, std::move(sub));
    }
    return {FqPoly(q_, std::move(quo)), r};
}

FqPoly FqPoly::derivative() const {
    if (coeffs_.size() <= 1) return zero(q_);
    std::vector<int> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        c[i - 1] = mod_reduce((long long)coeffs_[i] * (long long)(i % q_.q), q_.q);
    return FqPoly(q_, std::move(c));
}

int FqPoly::eval(int x) const {
    long long acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = mod_reduce(acc * x + coeffs_[i], q_.q);
    return int(acc);
}

FqPoly FqPoly::pow_mod(std::uint64_t e, const FqPoly& mod) const {
    FqPoly base = *this % mod;
    FqPoly acc = one(q_) % mod;
    while (e) {
        if (e & 1) acc = (acc * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return acc;
}

FqPoly FqPoly::gcd(const FqPoly& a, const FqPoly& b) {
    FqPoly x = a, y = b;
    while (!y.is_zero()) {
        FqPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

std::array<FqPoly, 3> FqPoly::extended_gcd(const FqPoly& a, const FqPoly& b) {
    Fq f = a.field();
    FqPoly r0 = a, r1 = b;
    FqPoly s0 = one(f), s1 = zero(f), t0 = zero(f), t1 = one(f);
    while (!r1.is_zero()) {
        auto [quo, rem] = r0.divmod(r1);
        r0 = std::exchange(r1, rem);
        s0 = std::exchange(s1, s0 - quo * s1);
        t0 = std::exchange(t1, t0 - quo * t1);
    }
    if (!r0.is_zero() && !r0.is_monic()) {
        int inv = mod_inv(r0.leading(), f.q);
        r0 = r0.scaled(inv);
        s0 = s0.scaled(inv);
        t0 = t0.scaled(inv);
    }
    return {r0, s0, t0};
}

std::string FqPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        int c = coeff(i);
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---- factorization ----

namespace {

// f squarefree and monic: split into products of equal-degree parts
void distinct_degree(const FqPoly& f, std::vector<std::pair<FqPoly, int>>& parts) {
    Fq field = f.field();
    FqPoly rest = f;
    FqPoly h = FqPoly::variable(field) % rest;
    int d = 0;
    while (rest.degree() > 0) {
        ++d;
        if (2 * d > rest.degree()) {
            parts.push_back({rest, rest.degree()});
            break;
        }
        h = h.pow_mod(std::uint64_t(field.q), rest);
        FqPoly g = FqPoly::gcd(rest, h - FqPoly::variable(field));
        if (g.degree() > 0) {
            parts.push_back({g, d});
            rest = rest / g;
            h = h % rest;
        }
    }
}

// f monic squarefree, all irreducible factors of degree d: split completely
void equal_degree(const FqPoly& f, int d, std::vector<FqPoly>& out, std::mt19937_64& rng) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    Fq field = f.field();
    std::uint64_t qd = checked_pow(std::uint64_t(field.q), d);
    for (;;) {
        // random polynomial of degree < deg f
        std::vector<int> c(std::size_t(f.degree()));
        for (int& x : c) x = int(rng() % std::uint64_t(field.q));
        FqPoly r(field, std::move(c));
        if (r.is_zero()) continue;
        FqPoly g = FqPoly::gcd(f, r);
        if (g.degree() == 0) {
            if (field.q == 2) {
                // trace map sum r^(2^i)
                FqPoly tr = FqPoly::zero(field);
                FqPoly cur = r % f;
                for (int i = 0; i < d; ++i) {
                    tr = (tr + cur) % f;
                    cur = (cur * cur) % f;
                }
                g = FqPoly::gcd(f, tr);
            } else {
                FqPoly s = r.pow_mod((qd - 1) / 2, f);
                g = FqPoly::gcd(f, s - FqPoly::one(field));
            }
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, out, rng);
            equal_degree(f / g, d, out, rng);
            return;
        }
    }
}

}  // namespace

UnivariateFactorization factor_univariate(const FqPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("factor_univariate: zero polynomial");
    UnivariateFactorization out;
    out.unit = f.leading();
    std::map<std::string, std::pair<FqPoly, int>> acc;
    Fq field = f.field();

    // multiplicity by repeated division against the squarefree part's factors
    FqPoly work = f.monic();
    std::mt19937_64 rng(0x7a7e5eedULL);  // fixed: factorization is deterministic
    while (work.degree() > 0) {
        // squarefree part of `work`
        FqPoly der = work.derivative();
        FqPoly sqfree;
        if (der.is_zero()) {
            // work = g(x^p) with p = char; p-th roots of coefficients are themselves in F_p
            std::vector<int> c(std::size_t(work.degree() / field.q) + 1);
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = work.coeff(int(i) * field.q);
            work = FqPoly(field, std::move(c));
            continue;
        }
        sqfree = work / FqPoly::gcd(work, der);
        std::vector<std::pair<FqPoly, int>> parts;
        distinct_degree(sqfree, parts);
        for (const auto& [part, d] : parts) {
            std::vector<FqPoly> irr;
            equal_degree(part, d, irr, rng);
            for (const FqPoly& pi : irr) {
                int mult = 0;
                while ((work % pi).is_zero()) {
                    work = work / pi;
                    ++mult;
                }
                auto key = pi.to_string();
                auto [it, fresh] = acc.emplace(key, std::make_pair(pi, mult));
                if (!fresh) it->second.second += mult;
            }
        }
    }
    for (auto& [k, v] : acc) out.factors.push_back(v);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.to_string() < b.first.to_string();
    });
    return out;
}

bool is_irreducible(const FqPoly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    UnivariateFactorization fac = factor_univariate(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

FqPoly parse_univariate(Fq f, const std::string& text, const std::string& var) {
    // sums of terms: [+-] [int] [* var [^exp]] ... ; no parentheses
    FqPoly acc = FqPoly::zero(f);
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    skip_ws();
    if (i == text.size()) throw std::invalid_argument("empty polynomial");
    while (i < text.size()) {
        int sign = 1;
        skip_ws();
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        }
        long long c = 1;
        bool saw_any = false;
        int exp_total = 0;
        skip_ws();
        if (i < text.size() && std::isdigit((unsigned char)text[i])) {
            c = 0;
            while (i < text.size() && std::isdigit((unsigned char)text[i])) c = c * 10 + (text[i++] - '0');
            saw_any = true;
        }
        for (;;) {
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
            if (text.compare(i, var.size(), var) == 0) {
                i += var.size();
                int e = 1;
                skip_ws();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip_ws();
                    if (i >= text.size() || !std::isdigit((unsigned char)text[i]))
                        throw std::invalid_argument("bad exponent in polynomial");
                    e = 0;
                    while (i < text.size() && std::isdigit((unsigned char)text[i]))
                        e = e * 10 + (text[i++] - '0');
                }
                exp_total += e;
                saw_any = true;
            } else {
                break;
            }
        }
        if (!saw_any) throw std::invalid_argument("cannot parse polynomial near position " +
                                                  std::to_string(i) + " of '" + text + "'");
        std::vector<int> mono(std::size_t(exp_total) + 1);
        mono[std::size_t(exp_total)] = mod_reduce(sign * c, f.q);
        acc = acc + FqPoly(f, std::move(mono));
        skip_ws();
        if (i < text.size() && text[i] != '+' && text[i] != '-')
            throw std::invalid_argument("unexpected character '" + std::string(1, text[i]) +
                                        "' in polynomial '" + text + "'");
    }
    return acc;
}

// ---- extension fields ----

ExtField::ExtField(FqPoly modulus) : modulus_(std::move(modulus)) {
    if (modulus_.degree() < 1 || !modulus_.is_monic())
        throw std::invalid_argument("ExtField: modulus must be monic of degree >= 1");
}

std::uint64_t ExtField::order() const { return checked_pow(std::uint64_t(base().q), degree()); }

ExtField::Elt ExtField::inv(const Elt& a) const {
    if (a.is_zero()) throw std::invalid_argument("ExtField::inv of zero");
    auto [g, s, t] = FqPoly::extended_gcd(a, modulus_);
    if (g.degree() != 0) throw std::invalid_argument("ExtField::inv: modulus not irreducible?");
    return reduce(s.scaled(mod_inv(g.coeff(0), base().q)));
}

ExtField::Elt ExtField::pow(const Elt& a, std::uint64_t e) const { return a.pow_mod(e, modulus_); }

ExtField::Elt ExtField::eval_poly(const FqPoly& f, const Elt& a) const {
    Elt acc = zero();
    for (int i = f.degree(); i >= 0; --i) acc = reduce(mul(acc, a) + from_int(f.coeff(i)));
    return acc;
}

std::vector<ExtField::Elt> ExtField::all_elements() const {
    std::uint64_t n = order();
    if (n > 2'000'000) throw std::overflow_error("ExtField::all_elements: field too large");
    std::vector<Elt> out;
    out.reserve(std::size_t(n));
    for (std::uint64_t c = 0; c < n; ++c) {
        std::uint64_t v = c;
        std::vector<int> coeffs(std::size_t(degree()));
        for (int i = 0; i < degree(); ++i) {
            coeffs[std::size_t(i)] = int(v % std::uint64_t(base().q));
            v /= std::uint64_t(base().q);
        }
        out.push_back(FqPoly(base(), std::move(coeffs)));
    }
    return out;
}

std::uint64_t ExtField::element_order(const Elt& a) const {
    if (a.is_zero()) throw std::invalid_argument("element_order of zero");
    std::uint64_t n = order() - 1;
    // order divides n; strip prime factors
    std::uint64_t ord = n;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        while (m % p == 0) {
            m /= p;
            while (ord % p == 0 && pow(a, ord / p) == one()) ord /= p;
        }
    }
    if (m > 1)
        while (ord % m == 0 && pow(a, ord / m) == one()) ord /= m;
    return ord;
}

ExtField::Elt ExtField::primitive_element() const {
    for (const Elt& a : all_elements()) {
        if (a.is_zero()) continue;
        if (element_order(a) == order() - 1) return a;
    }
    throw std::logic_error("no primitive element found");  // unreachable for fields
}

ExtPoly::ExtPoly(const ExtField* k, std::vector<ExtField::Elt> coeffs)
    : k_(k), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c = k_->reduce(c);
    trim();
}

void ExtPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const ExtField::Elt& ExtPoly::coeff(int i) const {
    static const ExtField::Elt zero_elt = FqPoly();
    if (i < 0 || i >= int(coeffs_.size())) {
        static thread_local ExtField::Elt z;
        z = FqPoly::zero(k_->base());
        return z;
    }
    (void)zero_elt;
    return coeffs_[std::size_t(i)];
}

ExtField::Elt ExtPoly::leading() const {
    return coeffs_.empty() ? k_->zero() : coeffs_.back();
}

bool ExtPoly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == k_->one(); }

ExtPoly ExtPoly::constant(const ExtField* k, ExtField::Elt c) {
    return ExtPoly(k, std::vector<ExtField::Elt>{std::move(c)});
}

ExtPoly ExtPoly::variable(const ExtField* k) {
    return ExtPoly(k, std::vector<ExtField::Elt>{k->zero(), k->one()});
}

ExtPoly ExtPoly::from_base(const ExtField* k, const FqPoly& f) {
    std::vector<ExtField::Elt> c;
    for (int i = 0; i <= f.degree(); ++i) c.push_back(k->from_int(f.coeff(i)));
    return ExtPoly(k, std::move(c));
}

ExtPoly ExtPoly::operator+(const ExtPoly& o) const {
    std::vector<ExtField::Elt> c(std::max(coeffs_.size(), o.coeffs_.size()), k_->zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < coeffs_.size()) c[i] = c[i] + coeffs_[i];
        if (i < o.coeffs_.size()) c[i] = c[i] + o.coeffs_[i];
    }
    return ExtPoly(k_, std::move(c));
}

ExtPoly ExtPoly::operator-(const ExtPoly& o) const {
    std::vector<ExtField::Elt> c(std::max(coeffs_.size(), o.coeffs_.size()), k_->zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < coeffs_.size()) c[i] = c[i] + coeffs_[i];
        if (i < o.coeffs_.size()) c[i] = c[i] - o.coeffs_[i];
    }
    return ExtPoly(k_, std::move(c));
}

ExtPoly ExtPoly::operator*(const ExtPoly& o) const {
    if (is_zero() || o.is_zero()) return ExtPoly(k_);
    std::vector<ExtField::Elt> c(coeffs_.size() + o.coeffs_.size() - 1, k_->zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] = c[i + j] + k_->mul(coeffs_[i], o.coeffs_[j]);
    return ExtPoly(k_, std::move(c));
}

std::pair<ExtPoly, ExtPoly> ExtPoly::divmod(const ExtPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("ExtPoly: division by zero");
    ExtPoly r = *this;
    if (r.degree() < d.degree()) return {ExtPoly(k_), r};
    ExtField::Elt inv_lead = k_->inv(d.leading());
    std::vector<ExtField::Elt> quo(std::size_t(r.degree() - d.degree() + 1), k_->zero());
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int kk = r.degree() - d.degree();
        ExtField::Elt c = k_->mul(r.leading(), inv_lead);
        quo[std::size_t(kk)] = c;
        std::vector<ExtField::Elt> sub(std::size_t(kk + d.degree() + 1), k_->zero());
        for (int i = 0; i <= d.degree(); ++i) sub[std::size_t(kk + i)] = k_->mul(c, d.coeff(i));
        r = r - ExtPoly(k_, std::move(sub));
    }
    return {ExtPoly(k_, std::move(quo)), r};
}

ExtPoly ExtPoly::monic() const {
    if (is_zero() || is_monic()) return *this;
    ExtField::Elt inv = k_->inv(leading());
    std::vector<ExtField::Elt> c(coeffs_);
    for (auto& x : c) x = k_->mul(x, inv);
    return ExtPoly(k_, std::move(c));
}

ExtPoly ExtPoly::pow_mod(std::uint64_t e, const ExtPoly& mod) const {
    ExtPoly base = divmod(mod).second;
    ExtPoly acc = constant(k_, k_->one()).divmod(mod).second;
    while (e) {
        if (e & 1) acc = (acc * base).divmod(mod).second;
        base = (base * base).divmod(mod).second;
        e >>= 1;
    }
    return acc;
}

ExtPoly ExtPoly::gcd(const ExtPoly& a, const ExtPoly& b) {
    ExtPoly x = a, y = b;
    while (!y.is_zero()) {
        ExtPoly r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.is_zero() ? x : x.monic();
}

ExtField::Elt ExtPoly::eval(const ExtField::Elt& a) const {
    ExtField::Elt acc = k_->zero();
    for (int i = degree(); i >= 0; --i) acc = k_->reduce(k_->mul(acc, a) + coeff(i));
    return acc;
}

std::string ExtPoly::to_string(const std::string& var, const std::string& base_var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const auto& c = coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << "(" << c.to_string(base_var) << ")";
        } else {
            if (!(c == k_->one())) os << "(" << c.to_string(base_var) << ")*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

bool is_irreducible_ext(const ExtPoly& g) {
    int n = g.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const ExtField& k = g.field();
    // x^(|K|^n) == x mod g, and x^(|K|^(n/p)) != x for prime divisors p of n
    ExtPoly x = ExtPoly::variable(&k);
    ExtPoly h = x;
    std::uint64_t kq = k.order();
    for (int i = 0; i < n; ++i) h = h.pow_mod(kq, g);
    if (!(h.divmod(g).second == x.divmod(g).second)) return false;
    for (int p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        ExtPoly hh = x;
        for (int i = 0; i < n / p; ++i) hh = hh.pow_mod(kq, g);
        ExtPoly diff = hh - x;
        ExtPoly gg = ExtPoly::gcd(diff, g);
        if (gg.degree() != 0) return false;
    }
    return true;
}

FqPoly minimal_polynomial(const ExtField& k, const ExtField::Elt& a) {
    int n = k.degree();
    int q = k.base().q;
    // rows: coordinates of 1, a, a^2, ... until linear dependence
    std::vector<std::vector<int>> rows;
    ExtField::Elt cur = k.one();
    for (int step = 0; step <= n; ++step) {
        std::vector<int> v(std::size_t(n));
        for (int i = 0; i < n; ++i) v[std::size_t(i)] = cur.coeff(i);
        rows.push_back(v);
        // gaussian elimination to test dependence of the last row on earlier ones
        std::vector<std::vector<int>> m = rows;
        std::vector<int> combo(rows.size(), 0);
        // augment with identity to track the dependency
        for (std::size_t r = 0; r < m.size(); ++r) {
            m[r].resize(std::size_t(n) + m.size(), 0);
            m[r][std::size_t(n) + r] = 1;
        }
        std::size_t rank = 0;
        for (int col = 0; col < n && rank < m.size(); ++col) {
            std::size_t piv = rank;
            while (piv < m.size() && m[piv][std::size_t(col)] == 0) ++piv;
            if (piv == m.size()) continue;
            std::swap(m[rank], m[piv]);
            int inv = mod_inv(m[rank][std::size_t(col)], q);
            for (auto& x : m[rank]) x = mod_reduce((long long)x * inv, q);
            for (std::size_t r = 0; r < m.size(); ++r) {
                if (r == rank || m[r][std::size_t(col)] == 0) continue;
                int f = m[r][std::size_t(col)];
                for (std::size_t c2 = 0; c2 < m[r].size(); ++c2)
                    m[r][c2] = mod_reduce(m[r][c2] - (long long)f * m[rank][c2], q);
            }
            ++rank;
        }
        if (rank < m.size()) {
            // a zero row exists; its tail holds the dependency among powers
            for (std::size_t r = 0; r < m.size(); ++r) {
                bool zero = true;
                for (int c = 0; c < n; ++c) zero = zero && m[r][std::size_t(c)] == 0;
                if (!zero) continue;
                std::vector<int> dep(m.size());
                for (std::size_t i = 0; i < m.size(); ++i) dep[i] = m[r][std::size_t(n) + i];
                FqPoly res(k.base(), std::vector<int>(dep.begin(), dep.end()));
                return res.monic();
            }
        }
        cur = k.mul(cur, a);
    }
    throw std::logic_error("minimal_polynomial: no dependency found");
}

}  // namespace ttchow::var
