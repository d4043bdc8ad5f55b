#pragma once

// Spectral-space abstraction: points, specialization order, dimension
// functions, Thomason subsets and their open complements. Finite posets are
// handled directly; scheme backends plug in as lazy enumerators with a
// canonical enumeration order (by residue degree, then lexicographically).

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttchow {

struct UnboundedEnumerationError : std::runtime_error {
    explicit UnboundedEnumerationError(const std::string& m) : std::runtime_error(m) {}
};
struct NotOpenError : std::runtime_error {
    explicit NotOpenError(const std::string& m) : std::runtime_error(m) {}
};

namespace space {

// Opaque point identifier; ids are unique and canonical within one model.
struct Point {
    std::string id;
    bool operator==(const Point&) const = default;
    auto operator<=>(const Point&) const = default;
};

// Sentinels for the two infinite dimension values.
inline constexpr int dim_neg_infty = std::numeric_limits<int>::min();
inline constexpr int dim_pos_infty = std::numeric_limits<int>::max();

// Enumeration bound for lazy backends. Finite models ignore it.
struct EnumBound {
    int degree = std::numeric_limits<int>::max();
    static EnumBound unbounded() { return EnumBound{}; }
    static EnumBound up_to(int d) { return EnumBound{d}; }
};

class SpectralModel {
public:
    virtual ~SpectralModel() = default;

    virtual std::string name() const = 0;
    virtual bool is_finite() const = 0;

    // All points (finite models) or all points of size <= bound, in the
    // model's canonical order. Throws UnboundedEnumerationError when an
    // infinite model is asked for an unbounded listing.
    virtual std::vector<Point> enumerate(const EnumBound& bound) const = 0;

    // b ∈ closure{a}  ("b is a specialization of a"); reflexive.
    virtual bool specializes(const Point& a, const Point& b) const = 0;

    virtual int dim(const Point& p) const = 0;
    virtual std::string display(const Point& p) const { return p.id; }

    // The finitely many generizations of p (points a with specializes(a, p)),
    // including p itself. Finite for every point of the bundled backends.
    virtual std::vector<Point> generizations_of(const Point& p) const = 0;

    // Backends assert, but cannot check, that the underlying space is
    // noetherian; reported as provenance only.
    virtual bool noetherian_asserted() const { return true; }

    virtual bool contains(const Point& p) const = 0;
};

// Thomason subset, represented by a finite generating set of points; the
// subset is the union of their closures. Always specialization-closed.
class ThomasonSubset {
public:
    ThomasonSubset() = default;
    explicit ThomasonSubset(std::vector<Point> generators) : generators_(std::move(generators)) {}

    const std::vector<Point>& generators() const { return generators_; }
    bool contains(const SpectralModel& m, const Point& x) const;

private:
    std::vector<Point> generators_;
};

// Open complement of a Thomason subset. Membership is "not specialized-from
// any generator", so lazy backends stay lazy.
class OpenSubset {
public:
    OpenSubset() = default;  // the whole space
    explicit OpenSubset(ThomasonSubset complement) : complement_(std::move(complement)) {}

    const ThomasonSubset& complement() const { return complement_; }
    bool contains(const SpectralModel& m, const Point& x) const {
        return !complement_.contains(m, x);
    }
    bool is_whole_space() const { return complement_.generators().empty(); }

private:
    ThomasonSubset complement_;
};

// Finite poset model: points with an explicit specialization relation and an
// arbitrary (not necessarily valid) dimension assignment.
class FinitePosetModel final : public SpectralModel {
public:
    FinitePosetModel(std::string name,
                     std::vector<Point> points,
                     std::map<std::string, std::string> display,
                     std::vector<std::pair<Point, Point>> specialization_pairs,
                     std::map<std::string, int> dims);

    std::string name() const override { return name_; }
    bool is_finite() const override { return true; }
    std::vector<Point> enumerate(const EnumBound&) const override { return points_; }
    bool specializes(const Point& a, const Point& b) const override;
    int dim(const Point& p) const override;
    std::string display(const Point& p) const override;
    std::vector<Point> generizations_of(const Point& p) const override;
    bool contains(const Point& p) const override { return dims_.count(p.id) > 0; }

    void set_dims(std::map<std::string, int> dims) { dims_ = std::move(dims); }

private:
    std::string name_;
    std::vector<Point> points_;
    std::map<std::string, std::string> display_;
    std::map<std::string, std::map<std::string, bool>> closure_;  // closure_[a][b]: b ∈ cl{a}
    std::map<std::string, int> dims_;
};

// View of a model restricted to an open subset, carrying dim|_U.
class RestrictedModel final : public SpectralModel {
public:
    RestrictedModel(std::shared_ptr<const SpectralModel> base, OpenSubset open);

    std::string name() const override;
    bool is_finite() const override { return base_->is_finite(); }
    std::vector<Point> enumerate(const EnumBound& bound) const override;
    bool specializes(const Point& a, const Point& b) const override {
        return base_->specializes(a, b);
    }
    int dim(const Point& p) const override { return base_->dim(p); }  // dim|_U keeps ambient values
    std::string display(const Point& p) const override { return base_->display(p); }
    std::vector<Point> generizations_of(const Point& p) const override;
    bool contains(const Point& p) const override {
        return base_->contains(p) && open_.contains(*base_, p);
    }
    bool noetherian_asserted() const override { return base_->noetherian_asserted(); }

    const OpenSubset& open() const { return open_; }
    const SpectralModel& base() const { return *base_; }

private:
    std::shared_ptr<const SpectralModel> base_;
    OpenSubset open_;
};

// ---- operations ----

// Points of dimension l (inside `within` when given), canonical order.
std::vector<Point> points_of_dim(const SpectralModel& m, int l, const EnumBound& bound,
                                 const OpenSubset* within = nullptr);

// Longest specialization chain strictly below / strictly above p. Both need
// every chain through p to be finite; the bundled backends guarantee that.
int krull_dim(const SpectralModel& m, const Point& p, const EnumBound& bound = EnumBound::unbounded());
int neg_codim(const SpectralModel& m, const Point& p);

// Restrict to an open; throws NotOpenError if the candidate generator set of
// the complement is not specialization-closed w.r.t. the listed points (only
// checkable on finite models; lazy backends trust the Thomason representation).
std::shared_ptr<RestrictedModel> restrict_dim(std::shared_ptr<const SpectralModel> m,
                                              const OpenSubset& u);

// Checks both dimension-function axioms on all comparable pairs of a finite model.
bool is_dimension_function(const SpectralModel& m);

// Check that a finite model's point subset is generization-closed (an open set).
bool is_open_point_set(const SpectralModel& m, const std::vector<Point>& subset);

}  // namespace space
}  // namespace ttchow
