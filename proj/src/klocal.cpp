#include "ttchow/klocal.hpp"

#include <sstream>

namespace ttchow::klocal {

SupportedElement SupportedElement::restricted_to(const space::SpectralModel& m,
                                                 const space::OpenSubset& u) const {
    SupportedElement out;
    out.l = l;
    out.p = p;
    for (const auto& [pt, val] : entries)
        if (u.contains(m, pt)) out.entries.emplace(pt, val);
    return out;
}

std::string SupportedElement::describe(const space::SpectralModel& m) const {
    if (entries.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [pt, val] : entries) {
        os << (first ? "" : " + ");
        first = false;
        if (val.is_opaque()) {
            os << val.opaque->describe() << " @ " << m.display(pt);
        } else {
            os << "(";
            for (std::size_t i = 0; i < val.coords.size(); ++i)
                os << (i ? "," : "") << val.coords[i];
            os << ") @ " << m.display(pt);
        }
    }
    return os.str();
}

SupportedElement KLocalData::boundary_of_opaque(const space::Point& from, int, const OpaqueElt&) const {
    throw MissingDataError("backend " + backend_name() + " has no opaque boundary at " + from.id);
}

std::vector<LocalValue> KLocalData::group_generators(const space::Point& q, int p) const {
    LocalGroupInfo info = group_info(q, p);
    std::vector<LocalValue> out;
    if (info.kind == GroupKind::finitely_generated) {
        for (std::size_t i = 0; i < info.group.rank(); ++i) {
            std::vector<Int> e(info.group.rank());
            e[i] = 1;
            if (!info.group.is_zero(e)) out.push_back(LocalValue::fg(std::move(e)));
        }
    }
    return out;  // element-wise groups: empty unless a backend overrides
}

SolveAttempt KLocalData::solve_local_preimage(const space::SpectralModel&, const SupportedElement&,
                                              const space::EnumBound&) const {
    return SolveAttempt{};  // cannot
}

std::optional<QuotientCertificate> KLocalData::chow_certificate(int) const { return std::nullopt; }

std::optional<std::vector<SupportedElement>> KLocalData::explicit_ker_i_generators(int) const {
    return std::nullopt;
}

namespace {

class DefaultNegativeK final : public KLocalData {
public:
    explicit DefaultNegativeK(std::shared_ptr<KLocalData> inner) : inner_(std::move(inner)) {}

    Window window() const override {
        Window w = inner_->window();
        w.zero_below = true;
        return w;
    }

    LocalGroupInfo group_info(const space::Point& q, int p) const override {
        if (inner_->window().covers(p)) return inner_->group_info(q, p);
        if (p <= -1) return LocalGroupInfo{};  // zero
        return inner_->group_info(q, p);       // out-of-window above: inner reports the error
    }

    zlin::IntMatrix boundary_matrix(const space::Point& from, const space::Point& to,
                                    int p) const override {
        // boundary out of or into an extended zero group is the zero matrix
        if (!inner_->window().covers(p) || !inner_->window().covers(p - 1)) {
            LocalGroupInfo src = group_info(from, p), dst = group_info(to, p - 1);
            std::size_t r = dst.kind == GroupKind::finitely_generated ? dst.group.rank() : 0;
            std::size_t c = src.kind == GroupKind::finitely_generated ? src.group.rank() : 0;
            return zlin::IntMatrix(r, c);
        }
        return inner_->boundary_matrix(from, to, p);
    }

    SupportedElement boundary_of_opaque(const space::Point& from, int p,
                                        const OpaqueElt& e) const override {
        return inner_->boundary_of_opaque(from, p, e);
    }

    std::vector<LocalValue> group_generators(const space::Point& q, int p) const override {
        if (!inner_->window().covers(p) && p <= -1) return {};
        return inner_->group_generators(q, p);
    }

    SolveAttempt solve_local_preimage(const space::SpectralModel& local,
                                      const SupportedElement& target,
                                      const space::EnumBound& bound) const override {
        return inner_->solve_local_preimage(local, target, bound);
    }

    std::optional<QuotientCertificate> chow_certificate(int l) const override {
        return inner_->chow_certificate(l);
    }

    std::optional<std::vector<SupportedElement>> explicit_ker_i_generators(int l) const override {
        return inner_->explicit_ker_i_generators(l);
    }

    std::vector<BoundaryKey> declared_boundaries() const override {
        return inner_->declared_boundaries();
    }

    std::string backend_name() const override { return inner_->backend_name(); }

    std::shared_ptr<KLocalData> inner() const { return inner_; }

private:
    std::shared_ptr<KLocalData> inner_;
};

}  // namespace

std::shared_ptr<KLocalData> default_negative_k(std::shared_ptr<KLocalData> data) {
    if (data->window().zero_below) return data;  // idempotent
    return std::make_shared<DefaultNegativeK>(std::move(data));
}

std::string ValidationReport::to_string() const {
    if (clean()) return "clean";
    std::ostringstream os;
    for (const auto& i : issues) os << "[" << i.code << "] " << i.where << ": " << i.message << "\n";
    return os.str();
}

ValidationReport validate(const KLocalData& data, const space::SpectralModel& model,
                          const space::EnumBound& bound, const PairingData* pairing) {
    ValidationReport rep;
    auto issue = [&](const std::string& code, const std::string& where, const std::string& msg) {
        rep.issues.push_back({code, where, msg});
    };

    Window w = data.window();
    if (w.lo > -1 && !w.zero_below)
        issue("window", "window", "window must reach weight -1 (apply default_negative_k)");

    std::vector<space::Point> pts;
    try {
        pts = model.enumerate(bound);
    } catch (const UnboundedEnumerationError& e) {
        issue("enumeration", "model", e.what());
        return rep;
    }

    // groups total on the window
    for (const space::Point& q : pts)
        for (int p = std::max(w.lo, -1); p <= w.hi; ++p) {
            try {
                (void)data.group_info(q, p);
            } catch (const std::exception& e) {
                issue("group-missing", q.id + ", p=" + std::to_string(p), e.what());
            }
        }

    // declared boundaries must sit on specialization pairs with adjacent dims
    for (const auto& key : data.declared_boundaries()) {
        if (!model.specializes(key.from, key.to))
            issue("boundary-support", key.from.id + " -> " + key.to.id,
                  "boundary declared on a non-specialization pair");
        else if (model.dim(key.to) != model.dim(key.from) - 1)
            issue("boundary-grading", key.from.id + " -> " + key.to.id,
                  "boundary must drop the dimension by exactly 1");
    }

    // matrix shapes + d^2 = 0 across two dimension steps (finitely generated strata)
    for (const space::Point& x : pts) {
        for (int p = std::max(w.lo, -1); p <= w.hi; ++p) {
            LocalGroupInfo gx = data.group_info(x, p);
            if (gx.kind != GroupKind::finitely_generated) continue;
            if (!w.covers(p - 1)) continue;
            for (const space::Point& y : pts) {
                if (y == x || !model.specializes(x, y) || model.dim(y) != model.dim(x) - 1) continue;
                LocalGroupInfo gy = data.group_info(y, p - 1);
                if (gy.kind != GroupKind::finitely_generated) continue;
                zlin::IntMatrix bxy = data.boundary_matrix(x, y, p);
                if (bxy.rows() != gy.group.rank() || bxy.cols() != gx.group.rank()) {
                    issue("boundary-shape", x.id + " -> " + y.id + ", p=" + std::to_string(p),
                          "boundary matrix shape mismatch");
                    continue;
                }
                if (!w.covers(p - 2)) continue;
                for (const space::Point& z : pts) {
                    if (z == y || !model.specializes(y, z) || model.dim(z) != model.dim(y) - 1)
                        continue;
                    LocalGroupInfo gz = data.group_info(z, p - 2);
                    if (gz.kind != GroupKind::finitely_generated) continue;
                    // sum over all middle points between x and z
                    zlin::IntMatrix acc(gz.group.rank(), gx.group.rank());
                    for (const space::Point& mid : pts) {
                        if (mid == x || mid == z) continue;
                        if (!model.specializes(x, mid) || !model.specializes(mid, z)) continue;
                        if (model.dim(mid) != model.dim(x) - 1) continue;
                        LocalGroupInfo gm = data.group_info(mid, p - 1);
                        if (gm.kind != GroupKind::finitely_generated) continue;
                        acc = acc + data.boundary_matrix(mid, z, p - 1) * data.boundary_matrix(x, mid, p);
                    }
                    // zero as a map into gz.group (entries may be nonzero but land in relations)
                    for (std::size_t j = 0; j < acc.cols(); ++j) {
                        std::vector<Int> col(acc.rows());
                        for (std::size_t i = 0; i < acc.rows(); ++i) col[i] = acc(i, j);
                        if (!gz.group.is_zero(col)) {
                            issue("d-squared", x.id + " => " + z.id + ", p=" + std::to_string(p),
                                  "boundary composite is nonzero");
                            break;
                        }
                    }
                }
            }
        }
    }

    // pairing sanity: the unit lives at weight 0 over dim-0 points with nonzero coefficients
    if (pairing) {
        SupportedElement unit = pairing->unit();
        if (unit.p != 0) issue("pairing-unit", "unit", "unit class must have weight 0");
        for (const auto& [pt, val] : unit.entries) {
            if (model.dim(pt) != 0)
                issue("pairing-unit", pt.id, "unit class supported outside the dim-0 stratum");
            LocalGroupInfo gi = data.group_info(pt, 0);
            if (gi.kind == GroupKind::finitely_generated && !val.is_opaque() &&
                gi.group.is_zero(val.coords))
                issue("pairing-unit", pt.id, "unit coefficient is zero");
        }
    }

    return rep;
}

}  // namespace ttchow::klocal
