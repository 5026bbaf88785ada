#pragma once

#include <catkit/deltacat.hpp>
#include <catkit/fibration.hpp>

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace catkit {

// Objects A_i over c_i with comparisons kappa_i: A_i -> (f_i)_! A_{i-1}; comparisons[i-1] is kappa_i.
struct StringSection {
    std::vector<ObjectId> objects;
    std::vector<ArrowId> comparisons;
    bool operator==(const StringSection&) const = default;
};

// The base arrow c_b -> c_a of a string, a >= b.
ArrowId chain_arrow(const FinCat& base, const SimplexString& s, int b, int a);
// The composite comparison A_a -> (f_a ... f_{b+1})_! A_b, a >= b.
ArrowId comparison(const IndexedCat& e, const SimplexString& s, const StringSection& a, int to, int from);
// Comparisons of a are arrows of the right fibres with the right endpoints.
CheckReport validate(const IndexedCat& e, const SimplexString& s, const StringSection& a);

// The category of string sections over one string, with componentwise maps.
class ExtensionFibre {
public:
    SimplexString string;
    CatPtr cat;
    std::vector<StringSection> sections;               // per object
    std::vector<std::vector<ArrowId>> components;      // per arrow

    std::optional<ObjectId> find(const StringSection& a) const;
    std::optional<ArrowId> find_arrow(ObjectId a, ObjectId b, const std::vector<ArrowId>& comps) const;
    bool is_cartesian(const IndexedCat& e, ObjectId a) const;

private:
    friend ExtensionFibre extension_fibre(const IndexedCat&, const SimplexString&, const Limits&);
    std::map<std::vector<std::uint32_t>, ObjectId> object_index_;
    std::map<std::vector<std::uint32_t>, ArrowId> arrow_index_;
};

ExtensionFibre extension_fibre(const IndexedCat& e, const SimplexString& s, const Limits& limits = {});

// Reindexing of sections along f: [m] -> [n], from the fibre over s to the fibre over s o f.
StringSection pull_section(const IndexedCat& e, const SimplexString& s, const StringSection& a, const SimplexMap& f);
std::vector<ArrowId> pull_components(const std::vector<ArrowId>& comps, const SimplexMap& f);
FinFunctor pull_functor(const IndexedCat& e, const ExtensionFibre& from, const ExtensionFibre& to,
                        const SimplexMap& f);

struct SimplicialExtension {
    IndexedCat base;
    std::shared_ptr<const Replacement> replacement;
    std::vector<std::shared_ptr<const ExtensionFibre>> fibres;  // per object of the replacement

    const ExtensionFibre& fibre(ObjectId c) const { return *fibres[c]; }
    // alpha_! for an arrow of the replacement.
    FinFunctor transition(ArrowId alpha) const;
    // The extension as an indexed category over the replacement.
    IndexedCat indexed() const;
};

SimplicialExtension build_extension(const IndexedCat& e, int level, const Limits& limits = {});
SimplicialExtension build_extension(const IndexedCat& e, std::shared_ptr<const Replacement> r,
                                    const Limits& limits = {});

enum class AdjointCase { identity, degeneracy, fill, drop_last, drop_first, composite };
std::string to_string(AdjointCase c);
AdjointCase adjoint_case(const SimplexMap& delta);

// Limit search in a finite category; the least object, then least legs, is chosen.
struct LimitCone {
    ObjectId apex;
    std::vector<ArrowId> legs;
};
std::optional<ObjectId> canonical_terminal(const FinCat& c);
std::optional<LimitCone> canonical_product(const FinCat& c, ObjectId x, ObjectId y);
// Pullback of x -> z <- y.
std::optional<LimitCone> canonical_pullback(const FinCat& c, ArrowId f, ArrowId g);

// The value of alpha^* on a section over the target string, as a section over the source string.
StringSection right_adjoint_section(const IndexedCat& e, const SimplexString& source, const SimplexMap& delta,
                                    const StringSection& b);
// alpha^* : E(target) -> E(source); throws missing_limit when a fibre lacks a required limit.
FinFunctor right_adjoint(const SimplicialExtension& x, ArrowId alpha);
// Components of the counit alpha_! alpha^* b -> b.
std::vector<ArrowId> counit_components(const IndexedCat& e, const SimplexString& source, const SimplexMap& delta,
                                       const StringSection& b);
// The arrow a -> alpha^* b corresponding to sigma: alpha_! a -> b.
ArrowId adjunct(const SimplicialExtension& x, ArrowId alpha, ObjectId a, ArrowId sigma);

// S sends X over c_0 to the cartesian section X <- (f_1)_! X <- ...; T pushes X to c_n.
FinFunctor functor_S(const SimplicialExtension& x, ObjectId c);
FinFunctor functor_T(const SimplicialExtension& x, ObjectId c);
FinFunctor evaluation(const SimplicialExtension& x, ObjectId c, int i);

}  // namespace catkit
