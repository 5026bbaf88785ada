#pragma once

#include <catkit/fincat.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace catkit {

// A strict functor from the base to finite categories.
struct IndexedCat {
    CatPtr base;
    std::vector<CatPtr> fibres;            // per base object
    std::vector<FinFunctor> transitions;   // per base arrow f: fibre(src f) -> fibre(dst f)

    const FinCat& fibre(ObjectId c) const { return *fibres[c]; }
    const FinFunctor& push(ArrowId f) const { return transitions[f]; }
};

// Transitions are valid functors with matching endpoints, and the assignment is strictly functorial.
CheckReport validate(const IndexedCat& e);

IndexedCat constant_indexed(const CatPtr& base, const CatPtr& fibre);
IndexedCat pullback(const FinFunctor& f, const IndexedCat& e);

// A Grothendieck construction with its projection and marked (op)cartesian arrows.
struct TotalCat {
    CatPtr total;
    FinFunctor proj;
    MapSubset marked;
    std::vector<std::pair<ObjectId, ObjectId>> objects;  // (base object, fibre object)
    std::vector<std::pair<ArrowId, ArrowId>> arrows;     // (base arrow, fibre arrow)
    std::optional<ObjectId> object_of(ObjectId c, ObjectId x) const;
};

// Objects (c, x); arrows (f, phi: f_! x -> x'); marked arrows have phi invertible.
TotalCat grothendieck_op(const IndexedCat& e, const Limits& limits = {});
// Objects (c, x); an arrow (c, x) -> (c', z) over g: c' -> c is phi: x -> g_! z; projection to base^op.
TotalCat transpose(const IndexedCat& e, const Limits& limits = {});

// Universal-property enumeration in the total category of p.
bool is_opcartesian(const FinFunctor& p, ArrowId a);
bool is_cartesian(const FinFunctor& p, ArrowId a);
// Marked arrows are exactly the (op)cartesian ones and every base arrow has a marked lift.
CheckReport check_opfibration(const TotalCat& t);
CheckReport check_fibration(const TotalCat& t);

// The fibre of the total category over c, with its inclusion.
struct FibreInclusion {
    CatPtr fibre;
    FinFunctor inclusion;
};
FibreInclusion strict_fibre(const FinFunctor& p, ObjectId c);

// Weak equivalences in every fibre.
struct MarkedIndexedCat {
    IndexedCat cat;
    std::vector<MapSubset> weq;
};

enum class WeqPreset { isos, all, identities };
MarkedIndexedCat mark(const IndexedCat& e, WeqPreset preset);
// Identities present, closure under composition with isomorphisms, preservation by transitions.
CheckReport check_marked(const MarkedIndexedCat& m);
CheckReport check_two_of_three(const MapSubset& w);

}  // namespace catkit
