#include "ttchow/space.hpp"

#include <algorithm>
#include <functional>

namespace ttchow::space {

bool ThomasonSubset::contains(const SpectralModel& m, const Point& x) const {
    for (const Point& g : generators_)
        if (m.specializes(g, x)) return true;
    return false;
}

FinitePosetModel::FinitePosetModel(std::string name,
                                   std::vector<Point> points,
                                   std::map<std::string, std::string> display,
                                   std::vector<std::pair<Point, Point>> specialization_pairs,
                                   std::map<std::string, int> dims)
    : name_(std::move(name)),
      points_(std::move(points)),
      display_(std::move(display)),
      dims_(std::move(dims)) {
    for (const Point& p : points_) {
        if (closure_.count(p.id))
            throw std::invalid_argument("FinitePosetModel: duplicate point id " + p.id);
        closure_[p.id][p.id] = true;
        if (!dims_.count(p.id))
            throw std::invalid_argument("FinitePosetModel: missing dim for " + p.id);
    }
    for (const auto& [a, b] : specialization_pairs) {
        if (!closure_.count(a.id) || !closure_.count(b.id))
            throw std::invalid_argument("FinitePosetModel: specialization pair with unknown point");
        closure_[a.id][b.id] = true;
    }
    // transitive closure (Floyd-Warshall over the point set)
    for (const Point& k : points_)
        for (const Point& a : points_)
            if (closure_[a.id].count(k.id))
                for (const Point& b : points_)
                    if (closure_[k.id].count(b.id)) closure_[a.id][b.id] = true;
    // antisymmetry: a partial order, not just a preorder
    for (const Point& a : points_)
        for (const Point& b : points_)
            if (a.id != b.id && closure_[a.id].count(b.id) && closure_[b.id].count(a.id))
                throw std::invalid_argument("FinitePosetModel: specialization has a cycle through " +
                                            a.id + " and " + b.id);
}

bool FinitePosetModel::specializes(const Point& a, const Point& b) const {
    auto it = closure_.find(a.id);
    return it != closure_.end() && it->second.count(b.id) > 0;
}

int FinitePosetModel::dim(const Point& p) const {
    auto it = dims_.find(p.id);
    if (it == dims_.end()) throw std::invalid_argument("FinitePosetModel: unknown point " + p.id);
    return it->second;
}

std::string FinitePosetModel::display(const Point& p) const {
    auto it = display_.find(p.id);
    return it == display_.end() ? p.id : it->second;
}

std::vector<Point> FinitePosetModel::generizations_of(const Point& p) const {
    std::vector<Point> out;
    for (const Point& a : points_)
        if (specializes(a, p)) out.push_back(a);
    return out;
}

RestrictedModel::RestrictedModel(std::shared_ptr<const SpectralModel> base, OpenSubset open)
    : base_(std::move(base)), open_(std::move(open)) {}

std::string RestrictedModel::name() const {
    if (open_.is_whole_space()) return base_->name();
    std::string n = base_->name() + "|U(~";
    bool first = true;
    for (const Point& g : open_.complement().generators()) {
        n += (first ? "" : ",") + g.id;
        first = false;
    }
    return n + ")";
}

std::vector<Point> RestrictedModel::enumerate(const EnumBound& bound) const {
    std::vector<Point> out;
    for (const Point& p : base_->enumerate(bound))
        if (open_.contains(*base_, p)) out.push_back(p);
    return out;
}

std::vector<Point> RestrictedModel::generizations_of(const Point& p) const {
    // opens are generization-closed, so no filtering is needed; keep it anyway
    // to guard against malformed Thomason data
    std::vector<Point> out;
    for (const Point& a : base_->generizations_of(p))
        if (open_.contains(*base_, a)) out.push_back(a);
    return out;
}

std::vector<Point> points_of_dim(const SpectralModel& m, int l, const EnumBound& bound,
                                 const OpenSubset* within) {
    std::vector<Point> out;
    for (const Point& p : m.enumerate(bound)) {
        if (m.dim(p) != l) continue;
        if (within && !within->contains(m, p)) continue;
        out.push_back(p);
    }
    return out;
}

namespace {

int longest_chain_up(const SpectralModel& m, const Point& p, int depth_guard) {
    if (depth_guard <= 0)
        throw UnboundedEnumerationError("chain search exceeded the depth guard at " + p.id);
    int best = 0;
    for (const Point& a : m.generizations_of(p)) {
        if (a == p) continue;
        best = std::max(best, 1 + longest_chain_up(m, a, depth_guard - 1));
    }
    return best;
}

}  // namespace

int krull_dim(const SpectralModel& m, const Point& p, const EnumBound& bound) {
    if (!m.is_finite() && bound.degree == std::numeric_limits<int>::max())
        throw UnboundedEnumerationError("krull_dim needs a bound on an infinite model");
    // longest chain of proper specializations below p
    std::vector<Point> pts = m.enumerate(bound);
    std::map<std::string, int> memo;
    // points sorted so every specialization of x is processed before x would be
    // ideal; do a simple recursive DP instead
    std::function<int(const Point&)> down = [&](const Point& x) -> int {
        auto it = memo.find(x.id);
        if (it != memo.end()) return it->second;
        int best = 0;
        for (const Point& b : pts)
            if (b != x && m.specializes(x, b)) best = std::max(best, 1 + down(b));
        memo[x.id] = best;
        return best;
    };
    return down(p);
}

int neg_codim(const SpectralModel& m, const Point& p) {
    return -longest_chain_up(m, p, 1 << 16);
}

bool is_open_point_set(const SpectralModel& m, const std::vector<Point>& subset) {
    // generization-closed: a ⤳ b in subset and specializes(a,b) forces a in subset
    auto in = [&](const Point& x) {
        return std::find(subset.begin(), subset.end(), x) != subset.end();
    };
    for (const Point& b : subset)
        for (const Point& a : m.enumerate(EnumBound::unbounded()))
            if (m.specializes(a, b) && !in(a)) return false;
    return true;
}

std::shared_ptr<RestrictedModel> restrict_dim(std::shared_ptr<const SpectralModel> m,
                                              const OpenSubset& u) {
    // restricting a restriction: intersect the opens over the original base,
    // i.e. take the union of the Thomason complements
    if (auto r = std::dynamic_pointer_cast<const RestrictedModel>(m)) {
        std::vector<Point> gens = r->open().complement().generators();
        for (const Point& g : u.complement().generators()) gens.push_back(g);
        std::shared_ptr<const SpectralModel> base(r, &r->base());
        return restrict_dim(base, OpenSubset(ThomasonSubset(std::move(gens))));
    }
    for (const Point& g : u.complement().generators())
        if (!m->contains(g))
            throw NotOpenError("restrict_dim: complement generator " + g.id + " is not a point");
    return std::make_shared<RestrictedModel>(std::move(m), u);
}

bool is_dimension_function(const SpectralModel& m) {
    if (!m.is_finite())
        throw UnboundedEnumerationError("is_dimension_function needs a finite model");
    std::vector<Point> pts = m.enumerate(EnumBound::unbounded());
    for (const Point& a : pts)
        for (const Point& b : pts) {
            if (!m.specializes(a, b)) continue;
            int da = m.dim(a), db = m.dim(b);
            // b ∈ closure{a}: dim must not grow along specialization...
            if (db > da) return false;
            // ...and must drop strictly on proper specializations with finite values
            if (a != b && da == db && da != dim_neg_infty && da != dim_pos_infty) return false;
        }
    return true;
}

}  // namespace ttchow::space
