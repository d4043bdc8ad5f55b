#pragma once

// Per-point local K-theory data: the groups K_p(Min_Q) for points Q of the
// spectrum and the boundary maps of the localization sequences. K-groups are
// input data supplied by a backend (tabulated for toy models, arithmetic for
// the variety backends); they are never computed from a category.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ttchow/space.hpp"
#include "ttchow/zlinalg.hpp"

namespace ttchow {

struct WindowError : std::runtime_error {
    explicit WindowError(const std::string& m) : std::runtime_error(m) {}
};
struct MissingDataError : std::runtime_error {
    explicit MissingDataError(const std::string& m) : std::runtime_error(m) {}
};

namespace klocal {

// K-theory weight window. `zero_below` means every weight below `lo` is the
// zero group (the default_negative_k extension).
struct Window {
    int lo = 0;
    int hi = 0;
    bool zero_below = false;
    bool covers(int p) const { return (p >= lo && p <= hi) || (zero_below && p < lo); }
};

// Backend-owned element of a group that is not finitely generated (e.g. the
// units of a function field). Generic code treats these as atoms.
struct OpaqueElt {
    virtual ~OpaqueElt() = default;
    virtual std::string describe() const = 0;
};

// One coefficient of a finitely supported section: either coordinates on the
// generators of a finitely generated group, or an opaque backend element.
struct LocalValue {
    std::vector<Int> coords;
    std::shared_ptr<const OpaqueElt> opaque;

    bool is_opaque() const { return opaque != nullptr; }
    static LocalValue fg(std::vector<Int> c) { return LocalValue{std::move(c), nullptr}; }
    static LocalValue from_opaque(std::shared_ptr<const OpaqueElt> e) { return LocalValue{{}, std::move(e)}; }

    // literal comparison (opaque values compare by canonical description);
    // group-level equality needs the group and lives with the callers
    bool operator==(const LocalValue& o) const {
        if (is_opaque() != o.is_opaque()) return false;
        if (is_opaque()) return opaque->describe() == o.opaque->describe();
        return coords == o.coords;
    }
};

// Finitely supported element of ⊕_{dim Q = l} K_p(Min_Q).
struct SupportedElement {
    int l = 0;  // stratum dimension of every support point
    int p = 0;  // K-theory weight
    std::map<space::Point, LocalValue> entries;

    bool empty() const { return entries.empty(); }
    SupportedElement restricted_to(const space::SpectralModel& m, const space::OpenSubset& u) const;
    std::string describe(const space::SpectralModel& m) const;
};

enum class GroupKind { zero, finitely_generated, element_wise };

struct LocalGroupInfo {
    GroupKind kind = GroupKind::zero;
    zlin::FinAbGroup group;  // meaningful when finitely_generated
    std::string note;        // e.g. "k(t)^*" for element-wise groups
};

// Outcome of a backend preimage solve for the stalkwise exactness checks.
struct SolveAttempt {
    enum class Status { solved, no_solution, cannot };
    Status status = Status::cannot;
    std::string witness;            // human-readable description of the preimage
    SupportedElement boundary;      // δ(witness), for the caller to verify against the target
};

// Normal-form certificate for a quotient Cyc_l / im(δ1) on backends whose
// rational-equivalence sources are not finitely generated. `normal_form` maps
// a cycle to coordinates in `group`; `two_sided` records whether the backend
// also certifies injectivity (constructive principality) rather than only
// "normal form kills the image".
struct QuotientCertificate {
    zlin::FinAbGroup group;
    std::function<std::vector<Int>(const SupportedElement&)> normal_form;
    std::string description;
    bool two_sided = false;
};

class KLocalData {
public:
    virtual ~KLocalData() = default;

    virtual Window window() const = 0;
    virtual LocalGroupInfo group_info(const space::Point& q, int p) const = 0;

    // Boundary matrix K_p(from) -> K_{p-1}(to) between finitely generated
    // groups; required zero unless to ∈ closure{from}.
    virtual zlin::IntMatrix boundary_matrix(const space::Point& from, const space::Point& to,
                                            int p) const = 0;

    // Boundary of an opaque element: the exact, finitely supported image in
    // the next stratum (e.g. the divisor of a rational function).
    virtual SupportedElement boundary_of_opaque(const space::Point& from, int p,
                                                const OpaqueElt& e) const;

    // Generators of K_p(Min_q) usable as exactness targets: unit vectors for
    // finitely generated groups; backends may supply generators for finite
    // element-wise groups (e.g. a primitive root of a residue field). Empty
    // means "cannot enumerate".
    virtual std::vector<LocalValue> group_generators(const space::Point& q, int p) const;

    // Solve δ(x) = target inside the local model (a generization poset), where
    // target sits in stratum l-1 = target.l at weight p = target.p and x is
    // sought in stratum l at weight p+1. Default: cannot.
    virtual SolveAttempt solve_local_preimage(const space::SpectralModel& local,
                                              const SupportedElement& target,
                                              const space::EnumBound& bound) const;

    // Optional normal-form certificate for CH in stratum dimension l.
    virtual std::optional<QuotientCertificate> chow_certificate(int l) const;

    // Explicit rational-equivalence generators (toy models without the Gersten
    // property must supply them in place of im(δ1)).
    virtual std::optional<std::vector<SupportedElement>> explicit_ker_i_generators(int l) const;

    // Declared boundary support (for validation); empty for arithmetic backends.
    struct BoundaryKey {
        space::Point from, to;
        int p;
    };
    virtual std::vector<BoundaryKey> declared_boundaries() const { return {}; }

    virtual std::string backend_name() const = 0;
};

// The local bilinear pairings K_p ⊗ K_q -> K_{p+q} used by the intersection
// product, together with the class of the unit object.
class PairingData {
public:
    virtual ~PairingData() = default;

    virtual std::string pairing_id() const = 0;

    // The class of the tensor unit: a weight-0 element over the dim-0 points.
    virtual SupportedElement unit() const = 0;

    // Candidate support of the product of classes supported at x and y: the
    // common specializations z with dim z = dim x + dim y, computed exactly.
    virtual std::vector<space::Point> product_support(const space::Point& x,
                                                      const space::Point& y) const = 0;

    // The local pairing K_0(Min_x) ⊗ K_0(Min_y) -> K_0(Min_z) applied to the
    // given coefficients. z must come from product_support(x, y).
    virtual LocalValue pair(const space::Point& x, const LocalValue& a, const space::Point& y,
                            const LocalValue& b, const space::Point& z) const = 0;
};

// Wraps a data source, extending the window downward with zero groups. Data
// already present (e.g. an explicit nonzero K_{-1} of a toy model) is kept.
std::shared_ptr<KLocalData> default_negative_k(std::shared_ptr<KLocalData> data);

// ---- validation ----

struct ValidationIssue {
    std::string code;     // stable identifier, e.g. "boundary-support"
    std::string where;    // point / pair / field
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool clean() const { return issues.empty(); }
    std::string to_string() const;
};

// Checks the KLocalData invariants on the enumerated part of the model:
// groups total on the window, boundaries supported on specialization pairs,
// d^2 = 0 across two dimension steps, pairing well-formedness.
ValidationReport validate(const KLocalData& data, const space::SpectralModel& model,
                          const space::EnumBound& bound, const PairingData* pairing = nullptr);

}  // namespace klocal
}  // namespace ttchow
