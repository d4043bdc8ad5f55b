#include "ttchow/gersten.hpp"

#include <algorithm>
#include <sstream>

namespace ttchow::gersten {

using klocal::GroupKind;
using klocal::LocalGroupInfo;
using klocal::LocalValue;
using klocal::SolveAttempt;
using zlin::AbHom;
using zlin::FinAbGroup;
using zlin::IntMatrix;

LocalStalkModel::LocalStalkModel(const SpectralModel& base, Point at)
    : base_(&base), at_(std::move(at)) {
    points_ = base.generizations_of(at_);
}

std::string LocalStalkModel::name() const { return base_->name() + " at " + at_.id; }

bool LocalStalkModel::contains(const Point& p) const {
    return std::find(points_.begin(), points_.end(), p) != points_.end();
}

std::vector<Int> Term::to_coords(const SupportedElement& s) const {
    if (!all_fg) throw MissingDataError("term (" + std::to_string(l) + "," + std::to_string(p) +
                                        ") is not finitely generated");
    std::vector<Int> v(sum.rank());
    for (const auto& [pt, val] : s.entries) {
        auto it = std::find(points.begin(), points.end(), pt);
        if (it == points.end())
            throw MissingDataError("support point " + pt.id + " outside the enumerated term; raise the bound");
        std::size_t idx = std::size_t(it - points.begin());
        if (val.is_opaque()) throw MissingDataError("opaque coefficient in a finitely generated term");
        if (val.coords.size() != local_groups[idx].rank())
            throw MissingDataError("coefficient length mismatch at " + pt.id);
        for (std::size_t i = 0; i < val.coords.size(); ++i) v[offsets[idx] + i] = val.coords[i];
    }
    return v;
}

SupportedElement Term::from_coords(const std::vector<Int>& v) const {
    SupportedElement s;
    s.l = l;
    s.p = p;
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        std::vector<Int> c(local_groups[idx].rank());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = v[offsets[idx] + i];
        if (!local_groups[idx].is_zero(c)) s.entries.emplace(points[idx], LocalValue::fg(std::move(c)));
    }
    return s;
}

Term assemble_term(const SpectralModel& model, const KLocalData& data, int l, int p,
                   const EnumBound& bound) {
    if (!data.window().covers(p))
        throw WindowError("weight " + std::to_string(p) + " outside the data window");
    Term t;
    t.l = l;
    t.p = p;
    FinAbGroup sum;
    for (const Point& q : space::points_of_dim(model, l, bound)) {
        if (model.dim(q) > 0)
            throw MissingDataError("row assembly expects the -codim convention (dims <= 0), got " +
                                   q.id);
        LocalGroupInfo info = data.group_info(q, p);
        if (info.kind == GroupKind::zero) continue;
        if (info.kind == GroupKind::element_wise) {
            t.all_fg = false;
            t.points.push_back(q);
            t.local_groups.emplace_back();
            t.offsets.push_back(sum.rank());
            continue;
        }
        t.points.push_back(q);
        t.offsets.push_back(sum.rank());
        t.local_groups.push_back(info.group);
        sum = FinAbGroup::direct_sum(sum, info.group);
    }
    t.sum = std::move(sum);
    return t;
}

AbHom boundary_hom(const SpectralModel& model, const KLocalData& data, const Term& src,
                   const Term& dst) {
    if (!src.all_fg || !dst.all_fg)
        throw MissingDataError("boundary_hom needs finitely generated terms");
    IntMatrix m(dst.sum.rank(), src.sum.rank());
    for (std::size_t i = 0; i < src.points.size(); ++i) {
        for (std::size_t j = 0; j < dst.points.size(); ++j) {
            const Point& x = src.points[i];
            const Point& y = dst.points[j];
            if (!model.specializes(x, y) || model.dim(y) != model.dim(x) - 1) continue;
            IntMatrix b = data.boundary_matrix(x, y, src.p);
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    m(dst.offsets[j] + r, src.offsets[i] + c) = b(r, c);
        }
    }
    return AbHom(src.sum, dst.sum, std::move(m));
}

SupportedElement apply_boundary(const SpectralModel& model, const KLocalData& data,
                                const SupportedElement& s, const std::vector<Point>& target_points) {
    SupportedElement out;
    out.l = s.l - 1;
    out.p = s.p - 1;
    std::map<Point, std::vector<Int>> acc;
    auto add_into = [&](const Point& y, const std::vector<Int>& c) {
        auto [it, fresh] = acc.emplace(y, c);
        if (!fresh)
            for (std::size_t i = 0; i < c.size(); ++i) it->second[i] += c[i];
    };
    for (const auto& [x, val] : s.entries) {
        if (val.is_opaque()) {
            SupportedElement img = data.boundary_of_opaque(x, s.p, *val.opaque);
            for (const auto& [y, w] : img.entries) {
                if (std::find(target_points.begin(), target_points.end(), y) == target_points.end())
                    continue;
                if (w.is_opaque())
                    throw MissingDataError("opaque boundary image at " + y.id);
                add_into(y, w.coords);
            }
        } else {
            for (const Point& y : target_points) {
                if (!model.specializes(x, y) || model.dim(y) != model.dim(x) - 1) continue;
                IntMatrix b = data.boundary_matrix(x, y, s.p);
                add_into(y, b.apply(val.coords));
            }
        }
    }
    for (auto& [y, c] : acc) {
        LocalGroupInfo info = data.group_info(y, out.p);
        if (info.kind == GroupKind::finitely_generated && info.group.is_zero(c)) continue;
        bool nonzero = std::any_of(c.begin(), c.end(), [](const Int& x) { return x != 0; });
        if (!nonzero) continue;
        out.entries.emplace(y, LocalValue::fg(std::move(c)));
    }
    return out;
}

CycleGroupResult cycle_group(const SpectralModel& model, const KLocalData& data, int l,
                             const EnumBound& bound) {
    Term t = assemble_term(model, data, l, 0, bound);
    if (!t.all_fg) throw MissingDataError("cycle group term is not finitely generated");
    return CycleGroupResult{t.sum, std::move(t)};
}

// ---- Gersten condition ----

namespace {

bool values_equal(const KLocalData& data, const Point& pt, int p, const LocalValue& a,
                  const LocalValue& b) {
    if (a.is_opaque() != b.is_opaque()) return false;
    if (a.is_opaque()) return a.opaque->describe() == b.opaque->describe();
    LocalGroupInfo info = data.group_info(pt, p);
    if (info.kind != GroupKind::finitely_generated) return false;
    return info.group.elements_equal(a.coords, b.coords);
}

bool entry_is_zero(const KLocalData& data, const Point& pt, int p, const LocalValue& v) {
    if (v.is_opaque()) return false;  // backends emit opaque values in canonical nonzero form
    LocalGroupInfo info = data.group_info(pt, p);
    if (info.kind == GroupKind::zero) return true;
    if (info.kind != GroupKind::finitely_generated) return false;
    return info.group.is_zero(v.coords);
}

// compare two supported elements after projecting both onto `points`
bool elements_equal_on(const KLocalData& data, const SupportedElement& a, const SupportedElement& b,
                       const std::vector<Point>& points) {
    for (const Point& pt : points) {
        auto ia = a.entries.find(pt);
        auto ib = b.entries.find(pt);
        bool ha = ia != a.entries.end(), hb = ib != b.entries.end();
        if (!ha && !hb) continue;
        if (!ha) {
            if (!entry_is_zero(data, pt, b.p, ib->second)) return false;
            continue;
        }
        if (!hb) {
            if (!entry_is_zero(data, pt, a.p, ia->second)) return false;
            continue;
        }
        if (!values_equal(data, pt, a.p, ia->second, ib->second)) return false;
    }
    return true;
}

struct StalkOutcome {
    GerstenStatus status = GerstenStatus::verified;
    std::string detail;
};

StalkOutcome check_stalk(const SpectralModel& model, const KLocalData& data, int l, int p,
                         const Point& at, const EnumBound& bound) {
    // local poset: generizations of `at` that the bound can see
    std::vector<Point> local_pts;
    for (const Point& x : model.enumerate(bound))
        if (model.specializes(x, at)) local_pts.push_back(x);

    std::vector<Point> middle_pts, out_pts, in_pts;
    for (const Point& x : local_pts) {
        int d = model.dim(x);
        if (d == l - 1) middle_pts.push_back(x);
        if (d == l - 2) out_pts.push_back(x);
        if (d == l) in_pts.push_back(x);
    }
    if (middle_pts.empty()) return {};  // nothing at this stalk, vacuous

    LocalStalkModel local(model, at);

    bool middle_fg = true;
    for (const Point& r : middle_pts)
        if (data.group_info(r, p).kind == GroupKind::element_wise) middle_fg = false;

    bool out_zero = true;
    for (const Point& s : out_pts)
        if (data.group_info(s, p - 1).kind != GroupKind::zero) out_zero = false;

    // exactness targets: generators of ker(delta_out) in the middle term
    std::vector<SupportedElement> targets;
    Term middle, out;
    if (middle_fg) {
        auto term_over = [&](int tl, int tp) {
            Term t;
            t.l = tl;
            t.p = tp;
            FinAbGroup sum;
            for (const Point& q : local_pts) {
                if (model.dim(q) != tl) continue;
                LocalGroupInfo info = data.group_info(q, tp);
                if (info.kind != GroupKind::finitely_generated) continue;
                t.points.push_back(q);
                t.offsets.push_back(sum.rank());
                t.local_groups.push_back(info.group);
                sum = FinAbGroup::direct_sum(sum, info.group);
            }
            t.sum = std::move(sum);
            return t;
        };
        middle = term_over(l - 1, p);
        if (out_zero) {
            // kernel is everything: per-point generators suffice
            for (std::size_t idx = 0; idx < middle.points.size(); ++idx)
                for (const LocalValue& g : data.group_generators(middle.points[idx], p)) {
                    SupportedElement t;
                    t.l = l - 1;
                    t.p = p;
                    t.entries.emplace(middle.points[idx], g);
                    targets.push_back(std::move(t));
                }
        } else {
            out = term_over(l - 2, p - 1);
            AbHom d_out = boundary_hom(model, data, middle, out);
            zlin::Subgroup ker = zlin::kernel(d_out);
            for (std::size_t j = 0; j < ker.group.rank(); ++j) {
                std::vector<Int> e(ker.group.rank());
                e[j] = 1;
                if (ker.group.is_zero(e)) continue;
                SupportedElement t = middle.from_coords(ker.inclusion.apply(e));
                if (!t.empty()) targets.push_back(std::move(t));
            }
        }
    } else {
        if (!out_zero)
            return {GerstenStatus::unverifiable,
                    "element-wise middle term with nonzero outgoing boundary at stalk " + at.id};
        for (const Point& r : middle_pts) {
            if (data.group_info(r, p).kind == GroupKind::zero) continue;
            std::vector<LocalValue> gens = data.group_generators(r, p);
            if (gens.empty() && data.group_info(r, p).kind == GroupKind::element_wise)
                return {GerstenStatus::unverifiable,
                        "cannot enumerate generators of the local group at " + r.id +
                            ", weight " + std::to_string(p)};
            for (const LocalValue& g : gens) {
                SupportedElement t;
                t.l = l - 1;
                t.p = p;
                t.entries.emplace(r, g);
                targets.push_back(std::move(t));
            }
        }
    }

    // try to lift every target through the incoming boundary
    for (const SupportedElement& target : targets) {
        SolveAttempt attempt = data.solve_local_preimage(local, target, bound);
        if (attempt.status == SolveAttempt::Status::solved) {
            SupportedElement projected;
            projected.l = target.l;
            projected.p = target.p;
            for (const auto& [pt, val] : attempt.boundary.entries)
                if (std::find(middle_pts.begin(), middle_pts.end(), pt) != middle_pts.end())
                    projected.entries.emplace(pt, val);
            if (!elements_equal_on(data, projected, target, middle_pts))
                return {GerstenStatus::unverifiable,
                        "backend witness " + attempt.witness + " does not project onto its target at stalk " +
                            at.id};
            continue;
        }
        if (attempt.status == SolveAttempt::Status::no_solution)
            return {GerstenStatus::violated,
                    "no preimage for " + target.describe(model) + " at stalk " + at.id +
                        (attempt.witness.empty() ? "" : " (" + attempt.witness + ")")};

        // generic fallback: finitely generated incoming term, membership via SNF
        if (!middle_fg)
            return {GerstenStatus::unverifiable,
                    "no solver for element-wise target " + target.describe(model) + " at stalk " + at.id};
        if (!data.window().covers(p + 1))
            return {GerstenStatus::unverifiable,
                    "window does not reach weight " + std::to_string(p + 1) + " for the incoming term"};
        bool in_fg = true;
        Term in_term;
        {
            FinAbGroup sum;
            for (const Point& q : in_pts) {
                LocalGroupInfo info = data.group_info(q, p + 1);
                if (info.kind == GroupKind::zero) continue;
                if (info.kind == GroupKind::element_wise) {
                    in_fg = false;
                    break;
                }
                in_term.points.push_back(q);
                in_term.offsets.push_back(sum.rank());
                in_term.local_groups.push_back(info.group);
                sum = FinAbGroup::direct_sum(sum, info.group);
            }
            in_term.l = l;
            in_term.p = p + 1;
            in_term.sum = std::move(sum);
        }
        if (!in_fg)
            return {GerstenStatus::unverifiable,
                    "incoming term at stalk " + at.id + " is not finitely generated and no solver applies"};
        AbHom d_in = boundary_hom(model, data, in_term, middle);
        std::vector<Int> t = middle.to_coords(target);
        FinAbGroup span(IntMatrix::hstack(d_in.matrix(), middle.sum.presentation()));
        if (!span.is_zero(t))
            return {GerstenStatus::violated,
                    "target " + target.describe(model) + " at stalk " + at.id +
                        " is not in the image of the incoming boundary"};
    }
    return {};
}

}  // namespace

BidegreeCheck gersten_check(const SpectralModel& model, const KLocalData& data, int l, int p,
                            const EnumBound& bound) {
    if (!data.window().covers(p) || !data.window().covers(p - 1))
        throw WindowError("gersten check (" + std::to_string(l) + "," + std::to_string(p) +
                          ") needs weights " + std::to_string(p - 1) + ".." + std::to_string(p));
    BidegreeCheck out;
    out.l = l;
    out.p = p;
    for (const Point& q : model.enumerate(bound)) {
        if (model.dim(q) > l - 1) continue;  // stalk sees nothing at levels <= l-1
        StalkOutcome res = check_stalk(model, data, l, p, q, bound);
        if (res.status == GerstenStatus::violated) {
            out.status = GerstenStatus::violated;
            out.detail = res.detail;
            return out;
        }
        if (res.status == GerstenStatus::unverifiable && out.status == GerstenStatus::verified) {
            out.status = GerstenStatus::unverifiable;
            out.detail = res.detail;
        }
    }
    return out;
}

bool gersten_holds(const SpectralModel& model, const KLocalData& data, int l, int p,
                   const EnumBound& bound) {
    return gersten_check(model, data, l, p, bound).status == GerstenStatus::verified;
}

std::string RectangleReport::summary() const {
    std::ostringstream os;
    os << "gersten rectangle for p=" << p << ": ";
    switch (overall) {
        case GerstenStatus::verified: os << "verified"; break;
        case GerstenStatus::violated: os << "VIOLATED"; break;
        case GerstenStatus::unverifiable: os << "unverifiable"; break;
    }
    for (const BidegreeCheck& c : checks)
        if (c.status != GerstenStatus::verified)
            os << "; (" << c.l << "," << c.p << "): "
               << (c.status == GerstenStatus::violated ? "violated" : "unverifiable") << " — "
               << c.detail;
    return os.str();
}

RectangleReport check_rectangle(const SpectralModel& model, const KLocalData& data, int p,
                                const EnumBound& bound) {
    RectangleReport rep;
    rep.p = p;
    for (int i = -p - 2; i <= 0; ++i) {
        for (int j = -1; j <= p; ++j) {
            BidegreeCheck c = gersten_check(model, data, i, j, bound);
            if (c.status == GerstenStatus::violated) rep.overall = GerstenStatus::violated;
            if (c.status == GerstenStatus::unverifiable && rep.overall == GerstenStatus::verified)
                rep.overall = GerstenStatus::unverifiable;
            rep.checks.push_back(std::move(c));
        }
    }
    return rep;
}

// ---- Chow groups and Bloch cohomology ----

namespace {

// Gersten bidegrees backing the identification im(Γδ1) = jφ(ker i) for the
// rational-equivalence quotient in stratum dimension l (only needed l <= -1).
std::vector<std::pair<int, int>> tail_bidegrees(int l) {
    return {{l + 1, 1}, {l + 1, 0}, {l, 0}, {l, -1}, {l - 1, -1}};
}

enum class RatEqMethod { none, explicit_gens, certificate, im_delta1 };

struct RatEq {
    RatEqMethod method = RatEqMethod::none;
    std::string describe;
    IntMatrix generators;  // columns in Cyc coordinates (explicit_gens / im_delta1)
    klocal::QuotientCertificate cert;
};

RatEq rational_equivalence(const SpectralModel& model, const KLocalData& data, int l,
                           const EnumBound& bound, const Term& cyc_term) {
    RatEq out;
    if (l >= 0) {
        out.method = RatEqMethod::none;
        out.describe = "weight-0 row: no rational equivalence";
        return out;
    }
    if (auto gens = data.explicit_ker_i_generators(l)) {
        IntMatrix m(cyc_term.sum.rank(), gens->size());
        for (std::size_t j = 0; j < gens->size(); ++j) {
            std::vector<Int> v = cyc_term.to_coords((*gens)[j]);
            for (std::size_t i = 0; i < v.size(); ++i) m(i, j) = v[i];
        }
        out.method = RatEqMethod::explicit_gens;
        out.describe = "explicit ker(i) generators";
        out.generators = std::move(m);
        return out;
    }
    if (auto cert = data.chow_certificate(l)) {
        out.method = RatEqMethod::certificate;
        out.describe = cert->description;
        out.cert = std::move(*cert);
        return out;
    }
    // im(delta1), justified by the verified Gersten tail
    for (auto [i, j] : tail_bidegrees(l)) {
        BidegreeCheck c = gersten_check(model, data, i, j, bound);
        if (c.status != GerstenStatus::verified)
            throw MissingDataError(
                "rational equivalence in dimension " + std::to_string(l) +
                " needs either explicit ker(i) generators or a verified Gersten tail; bidegree (" +
                std::to_string(i) + "," + std::to_string(j) + ") is " +
                (c.status == GerstenStatus::violated ? "violated" : "unverifiable") +
                (c.detail.empty() ? "" : ": " + c.detail));
    }
    Term upper = assemble_term(model, data, l + 1, 1, bound);
    if (!upper.all_fg)
        throw MissingDataError("im(delta1) route needs a finitely generated source term");
    AbHom d1 = boundary_hom(model, data, upper, cyc_term);
    out.method = RatEqMethod::im_delta1;
    out.describe = "im(delta1), Gersten tail verified";
    out.generators = d1.matrix();
    return out;
}

AbHom delta0_hom(const SpectralModel& model, const KLocalData& data, const Term& cyc_term,
                 const EnumBound& bound) {
    Term below = assemble_term(model, data, cyc_term.l - 1, -1, bound);
    return boundary_hom(model, data, cyc_term, below);
}

}  // namespace

ChowResult chow_group(const SpectralModel& model, const KLocalData& data, int l,
                      const EnumBound& bound) {
    CycleGroupResult cyc = cycle_group(model, data, l, bound);
    RatEq rel = rational_equivalence(model, data, l, bound, cyc.term);
    ChowResult res;
    res.cycles = cyc;
    res.method = rel.describe;
    switch (rel.method) {
        case RatEqMethod::none:
            res.group = cyc.group;
            break;
        case RatEqMethod::certificate:
            res.group = rel.cert.group;
            res.certificate = true;
            res.two_sided = rel.cert.two_sided;
            break;
        case RatEqMethod::explicit_gens:
        case RatEqMethod::im_delta1:
            res.group = zlin::quotient_by_image(cyc.group, rel.generators);
            break;
    }
    return res;
}

ChowResult cap_chow_group(const SpectralModel& model, const KLocalData& data, int l,
                          const EnumBound& bound) {
    CycleGroupResult cyc = cycle_group(model, data, l, bound);
    AbHom d0 = delta0_hom(model, data, cyc.term, bound);
    bool d0_zero = d0.is_zero_map();
    RatEq rel = rational_equivalence(model, data, l, bound, cyc.term);

    ChowResult res;
    res.cycles = cyc;
    res.method = rel.describe;
    if (rel.method == RatEqMethod::certificate) {
        if (!d0_zero)
            throw MissingDataError(
                "backend certificate assumes zero negative K-theory, but delta0 is nonzero");
        res.group = rel.cert.group;
        res.certificate = true;
        res.two_sided = rel.cert.two_sided;
        return res;
    }

    // ∩Cyc = ker(delta0), the (γ')^{-1}(ker ε') description
    zlin::Subgroup cap_cyc = zlin::kernel(d0);
    if (rel.method == RatEqMethod::none) {
        res.group = cap_cyc.group;
        return res;
    }
    // quotient the kernel by the rational-equivalence generators (they must be cycles)
    for (std::size_t j = 0; j < rel.generators.cols(); ++j) {
        std::vector<Int> col(rel.generators.rows());
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = rel.generators(i, j);
        if (!d0.target().is_zero(d0.apply(col)))
            throw MissingDataError("rational-equivalence generator is not a delta0-cycle");
    }
    IntMatrix denom = IntMatrix::hstack(rel.generators, cyc.group.presentation());
    IntMatrix rels = zlin::preimage_lattice(cap_cyc.inclusion.matrix(), denom);
    res.group = FinAbGroup(rels);
    return res;
}

BlochResult bloch_cohomology(const SpectralModel& model, const KLocalData& data, int p,
                             const EnumBound& bound) {
    if (p < 0) throw WindowError("bloch_cohomology needs p >= 0");
    BlochResult out;
    out.rectangle = check_rectangle(model, data, p, bound);
    if (out.rectangle.overall != GerstenStatus::verified)
        throw GerstenViolationError(out.rectangle.summary());

    Term cp = assemble_term(model, data, -p, 0, bound);
    AbHom d0 = delta0_hom(model, data, cp, bound);
    if (p == 0) {
        out.group = zlin::kernel(d0).group;
        out.method = "ker(Gamma delta0)";
        return out;
    }
    Term cpm1 = assemble_term(model, data, -p + 1, 1, bound);
    if (cpm1.all_fg) {
        AbHom d1 = boundary_hom(model, data, cpm1, cp);
        out.group = zlin::subquotient(d1, d0);
        out.method = "ker(Gamma delta0)/im(Gamma delta1)";
        return out;
    }
    // element-wise delta1 source: fall back to the backend's quotient certificate
    auto cert = data.chow_certificate(-p);
    if (!cert || !d0.is_zero_map())
        throw MissingDataError("weight-" + std::to_string(p) +
                               " row has an element-wise term and no usable certificate");
    out.group = cert->group;
    out.method = cert->description;
    return out;
}

zlin::FinAbGroup row_cohomology(const SpectralModel& model, const KLocalData& data, int p, int i,
                                const EnumBound& bound) {
    if (i < 0 || i > p + 1) return FinAbGroup();
    Term ci = assemble_term(model, data, -i, p - i, bound);
    if (!ci.all_fg) throw MissingDataError("row term is not finitely generated");
    AbHom d_in = AbHom::zero(FinAbGroup(), ci.sum);
    if (i > 0) {
        Term prev = assemble_term(model, data, -i + 1, p - i + 1, bound);
        if (!prev.all_fg) throw MissingDataError("row term is not finitely generated");
        d_in = boundary_hom(model, data, prev, ci);
    }
    AbHom d_out = AbHom::zero(ci.sum, FinAbGroup());
    if (i <= p) {
        Term next = assemble_term(model, data, -i - 1, p - i - 1, bound);
        if (!next.all_fg) throw MissingDataError("row term is not finitely generated");
        d_out = boundary_hom(model, data, ci, next);
    }
    return zlin::subquotient(d_in, d_out);
}

}  // namespace ttchow::gersten
