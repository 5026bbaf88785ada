#pragma once

#include <catkit/deltacat.hpp>
#include <catkit/fibration.hpp>
#include <catkit/fincat.hpp>
#include <catkit/homotopy.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace catkit {

// Lifts of a string c_0 -> ... -> c_n along F: D -> C up to componentwise isomorphism.
// An object is a string d_0 -> ... -> d_n of D with isos u_i: F d_i -> c_i making every square commute;
// an arrow is a componentwise map h with u'_i o F h_i = u_i.
class FibreCategory {
public:
    FinFunctor functor;
    SimplexString string;
    CatPtr cat;
    std::vector<std::vector<ObjectId>> lifts;       // d_i per object
    std::vector<std::vector<ArrowId>> lift_arrows;  // d_{i-1} -> d_i per object
    std::vector<std::vector<ArrowId>> isos;         // u_i per object
    std::vector<std::vector<ArrowId>> components;   // h_i per arrow

    std::optional<ObjectId> find(const std::vector<ObjectId>& d, const std::vector<ArrowId>& g,
                                 const std::vector<ArrowId>& u) const;
    std::optional<ArrowId> find_arrow(ObjectId a, ObjectId b, const std::vector<ArrowId>& comps) const;

private:
    friend FibreCategory fibre_category(const FinFunctor&, const SimplexString&, const Limits&);
    std::vector<std::uint32_t> key(const std::vector<ObjectId>& d, const std::vector<ArrowId>& g,
                                   const std::vector<ArrowId>& u) const;
    std::map<std::vector<std::uint32_t>, ObjectId> object_index_;
    std::map<std::vector<std::uint32_t>, ArrowId> arrow_index_;
};

FibreCategory fibre_category(const FinFunctor& f, const SimplexString& s, const Limits& limits = {});
// Restriction from the fibre over s to the fibre over s o delta.
FinFunctor restrict_fibre(const FibreCategory& from, const FibreCategory& to, const SimplexMap& delta);

// Every iso out of F d lifts to an iso out of d.
CheckReport is_isofibration(const FinFunctor& f);

struct FibreDiagnostic {
    std::string name;
    std::size_t objects = 0, arrows = 0;
    ContractibilityVerdict verdict;
};

struct DiagnosticReport {
    Verdict verdict = Verdict::certified;
    std::vector<FibreDiagnostic> per_fibre;
    std::size_t skipped = 0;  // fibres left out by a selection
    void add(FibreDiagnostic d);
    // The first fibre that refutes the verdict.
    const FibreDiagnostic* witness() const;
};

// Contractibility of D(c) for every string of C of length at most n, homology to depth d.
DiagnosticReport check_resolution(const FinFunctor& f, int n, int d, const Limits& limits = {});
// Homology depth allowed per fibre, capping the requested depth; below 1 the fibre is skipped.
// x indexes the objects of the fixed end D(c) or D(c').
struct FibreSelection {
    std::function<int(ObjectId c)> object;
    std::function<int(ArrowId f, const FibreCategory& end, ObjectId x)> arrow;
};

// D(c) for objects, and strict fibres of D(c' -> c) over D(c) (right) or over D(c') (left).
// Throws precondition unless f is an isofibration.
DiagnosticReport check_right_resolution(const FinFunctor& f, int d, const Limits& limits = {},
                                        const FibreSelection& select = {});
DiagnosticReport check_left_resolution(const FinFunctor& f, int d, const Limits& limits = {},
                                       const FibreSelection& select = {});

// Contractibility of the under categories b\f for every object b.
DiagnosticReport cofinality(const FinFunctor& f, int d, const Limits& limits = {});

// The relative comma object of F: X -> Z <- Y: G over truncated simplicial sets.
// Objects (x, y, s) with x in X_n, y in Y_m, s: [m] ->> [n] and G y = s^* F x.
// Arrows (a, b): (x, y, s) -> (a^* x, b^* y, s') with s o b = a o s'.
struct RelComma {
    struct Object {
        int n = 0;
        std::size_t x = 0;
        int m = 0;
        std::size_t y = 0;
        SimplexMap s;
    };
    struct Arrow {
        SimplexMap a, b;
    };

    SimplicialMap left, right;
    ElementsCategory x_elements, y_elements;
    CatPtr cat;
    std::vector<Object> objects;
    std::vector<Arrow> arrows;
    FinFunctor to_x, to_y;
    // Present when F is an identity: y goes to (G y, y, id).
    std::optional<FinFunctor> include_y;

    int degree(ObjectId o) const { return objects[o].n + objects[o].m; }
    std::optional<ObjectId> find(int n, std::size_t x, int m, std::size_t y, const SimplexMap& s) const;
    std::optional<ArrowId> find_arrow(ObjectId src, ObjectId dst, const SimplexMap& a, const SimplexMap& b) const;

private:
    friend RelComma relative_comma(const SimplicialMap&, const SimplicialMap&, const Limits&);
    std::map<std::vector<std::uint32_t>, ObjectId> object_index_;
    std::map<std::vector<std::uint32_t>, ArrowId> arrow_index_;
};

RelComma relative_comma(const SimplicialMap& f, const SimplicialMap& g, const Limits& limits = {});

// Degree, projections, the inclusion of Y and its adjunction with the projection to Y.
CheckReport check_rel_comma(const RelComma& r);

// The lift of a face map x -> a^* x at o, built from the pullback of s along a.
ArrowId face_lift(const RelComma& r, ObjectId o, const SimplexMap& a);
// Face lifts project to the face, recompose to the square, and are opcartesian.
CheckReport check_face_lifts(const RelComma& r);

struct CommaMapLabels {
    bool segal = false;
    bool face = false;        // both components injective; lowers the degree unless an identity
    bool degeneracy = false;  // both components surjective; raises the degree unless an identity
    unsigned x_labels = 0, y_labels = 0;
};
CommaMapLabels classify_comma_map(const RelComma& r, ArrowId f);

// f = raising o lowering through the object on the image of the injective parts.
struct CommaFactorization {
    ArrowId lowering = no_arrow, raising = no_arrow;
    ObjectId middle = 0;
};
CommaFactorization reedy_factor_comma(const RelComma& r, ArrowId f);

// A commutative square in the simplex category with surjective vertical maps:
// left o top = bottom o right, where top: [k] -> [l], bottom: [m] -> [n], left: [l] ->> [n], right: [k] ->> [m].
struct DeltaSquare {
    SimplexMap top, bottom, left, right;
    CheckReport validate() const;
    bool operator==(const DeltaSquare&) const = default;
};

// Horizontal pasting; outer.left is first.left and outer.right is second.right.
DeltaSquare paste(const DeltaSquare& first, const DeltaSquare& second);

enum class IntervalSide { left, right };
std::string to_string(IntervalSide s);
std::optional<IntervalSide> interval_side(const SimplexMap& f);

struct SquareFactorization {
    DeltaSquare first, second;
    IntervalSide side = IntervalSide::left;
    std::vector<std::string> checks;  // each verified relation
    CheckReport verified;
};

// Top an interval inclusion: bottom = gamma o zeta with gamma an interval of the same side and zeta surjective.
SquareFactorization factor_square_1(const DeltaSquare& sq);
// Bottom an interval inclusion: top = epsilon o mu with epsilon an interval of the same side
// and the first square a pullback.
SquareFactorization factor_square_2(const DeltaSquare& sq);
// The square is a pullback of its left map along its bottom map.
bool is_pullback(const DeltaSquare& sq);

// Completion of a surjection and an interval inclusion to a square with interval horizontals of that side.
// Given the top map and the left surjection out of its target.
DeltaSquare complete_from_top(const SimplexMap& top, const SimplexMap& left);
// Given the bottom map and the right surjection into its source.
DeltaSquare complete_from_bottom(const SimplexMap& bottom, const SimplexMap& right);

// The comparison from the comma fibre over a string to D(string), taking the first vertex of each block.
struct TauDiagnostic {
    std::string name;
    ContractibilityVerdict comma_fibre, target;
    Verdict cofinal = Verdict::refuted;
};

struct CommaResolutionReport {
    Verdict verdict = Verdict::refuted;
    DiagnosticReport left;
    std::vector<TauDiagnostic> tau;
    std::size_t comma_objects = 0, comma_arrows = 0;
};

// Left resolution diagnostics for the projection of the comma of the replacement of f at truncation n.
// Fibres cut short by the truncation are skipped and counted.
// Throws precondition unless f is an isofibration and check_resolution does not refute it.
CommaResolutionReport check_comma_resolution(const FinFunctor& f, int n, int d, const Limits& limits = {});

}  // namespace catkit
