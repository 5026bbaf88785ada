#pragma once

#include <catkit/fincat.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace catkit {

// A monotone map [m] -> [n]; values[i] is the image of i.
struct SimplexMap {
    int m = 0, n = 0;
    std::vector<int> values;

    bool operator==(const SimplexMap&) const = default;
    int operator()(int i) const { return values[static_cast<std::size_t>(i)]; }
    bool is_identity() const;
    bool is_injective() const;
    bool is_surjective() const;
    std::string str() const;  // "m->n:v0,v1,..."
};

SimplexMap make_simplex_map(int m, int n, std::vector<int> values);
SimplexMap parse_simplex_map(std::string_view text);
SimplexMap identity_map(int n);
// g after f.
SimplexMap compose(const SimplexMap& g, const SimplexMap& f);
// d^i: [n-1] -> [n] skipping i.
SimplexMap coface(int n, int i);
// s^i: [n+1] -> [n] hitting i twice.
SimplexMap codegeneracy(int n, int i);
// Interval inclusion [m] -> [n] starting at offset.
SimplexMap interval_inclusion(int m, int n, int offset);
std::vector<SimplexMap> all_maps(int m, int n);

struct ReedyFactorization {
    SimplexMap surjection;  // [m] ->> [k]
    SimplexMap injection;   // [k] >-> [n]
};
ReedyFactorization factor_reedy(const SimplexMap& f);

// f = inclusion o first, where inclusion is a left interval inclusion [k] -> [n] and
// first hits k, so the factorization exists and is unique for every f.
struct InitialFactorization {
    SimplexMap first;
    SimplexMap inclusion;
    bool first_preserves_initial = false;
};
InitialFactorization factor_initial(const SimplexMap& f);

enum MapLabel : unsigned {
    label_segal = 1u << 0,
    label_anti_segal = 1u << 1,
    label_anchor = 1u << 2,
    label_convex = 1u << 3,
    label_degeneracy = 1u << 4,
    label_face = 1u << 5,
};
unsigned classify(const SimplexMap& delta);
std::vector<std::string> label_names(unsigned labels);

// Ranks every monotone map [m] -> [n] with m, n <= level.
class SimplexMapIndex {
public:
    explicit SimplexMapIndex(int level);
    int level() const { return level_; }
    const std::vector<SimplexMap>& maps(int m, int n) const { return maps_[slot(m, n)]; }
    std::size_t rank(const SimplexMap& f) const;

private:
    std::size_t slot(int m, int n) const { return static_cast<std::size_t>(m * (level_ + 1) + n); }
    int level_;
    std::vector<std::vector<SimplexMap>> maps_;
    std::vector<std::unordered_map<std::uint64_t, std::size_t>> ranks_;
};

// The truncated simplex category with objects [0], ..., [N].
struct SimplexCategory {
    CatPtr cat;
    std::shared_ptr<const SimplexMapIndex> index;
    std::vector<std::size_t> offset;
    ArrowId arrow_of(const SimplexMap& f) const;
    const SimplexMap& map_of(ArrowId a) const { return maps[a]; }
    std::vector<SimplexMap> maps;
};
SimplexCategory simplex_category(int level);

// Simplicial set truncated at a level, stored by its faces and degeneracies.
class TruncatedSSet {
public:
    class Builder;

    int level() const { return level_; }
    std::size_t size(int n) const { return names_[static_cast<std::size_t>(n)].size(); }
    const std::string& name(int n, std::size_t x) const { return names_[static_cast<std::size_t>(n)][x]; }
    // d_i: X_n -> X_{n-1}
    std::size_t face(int n, int i, std::size_t x) const {
        return faces_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i) * size(n) + x];
    }
    // s_i: X_n -> X_{n+1}
    std::size_t degeneracy(int n, int i, std::size_t x) const {
        return degeneracies_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i) * size(n) + x];
    }
    bool is_degenerate(int n, std::size_t x) const { return degenerate_[static_cast<std::size_t>(n)][x] != 0; }
    // The action of f: [m] -> [n] sends X_n to X_m.
    std::size_t act(const SimplexMap& f, std::size_t x) const;
    std::optional<std::size_t> find(int n, std::string_view name) const;

    CheckReport validate() const;
    // Checks act(g o f) = act(f) o act(g) for all pairs of maps between levels <= bound.
    CheckReport check_functoriality(int bound) const;

private:
    int level_ = 0;
    std::vector<std::vector<std::string>> names_;
    std::vector<std::vector<std::size_t>> faces_, degeneracies_;
    std::vector<std::vector<char>> degenerate_;
};

using SSetPtr = std::shared_ptr<const TruncatedSSet>;

class TruncatedSSet::Builder {
public:
    explicit Builder(int level);
    std::size_t add_simplex(int n, std::string name);
    void set_face(int n, int i, std::size_t x, std::size_t y);
    void set_degeneracy(int n, int i, std::size_t x, std::size_t y);
    std::size_t size(int n) const { return names_[static_cast<std::size_t>(n)].size(); }
    // Faces and degeneracies left unset are a validation error.
    TruncatedSSet build();

private:
    int level_;
    std::vector<std::vector<std::string>> names_;
    std::vector<std::vector<std::vector<std::size_t>>> faces_, degeneracies_;
};

inline constexpr std::size_t unset_simplex = static_cast<std::size_t>(-1);

struct SimplicialMap {
    SSetPtr src, dst;
    std::vector<std::vector<std::size_t>> maps;  // per level
    CheckReport validate() const;
};

// Renames simplices: simplex x of X_n becomes perms[n][x].
TruncatedSSet permute(const TruncatedSSet& x, const std::vector<std::vector<std::size_t>>& perms);

// A string c_0 -> c_1 -> ... -> c_n of composable arrows.
struct SimplexString {
    std::vector<ObjectId> objects;
    std::vector<ArrowId> arrows;
    int dim() const { return static_cast<int>(arrows.size()); }
    bool operator==(const SimplexString&) const = default;
};

// Precomposition with f: [m] -> [n].
SimplexString restrict_string(const FinCat& c, const SimplexString& s, const SimplexMap& f);
std::string string_name(const FinCat& c, const SimplexString& s);

struct Nerve {
    CatPtr base;
    SSetPtr sset;
    std::vector<std::vector<SimplexString>> strings;
    std::size_t index_of(const SimplexString& s) const;
    std::unordered_map<std::string, std::size_t> lookup;
};

Nerve nerve(const CatPtr& c, int level, const Limits& limits = {});
SimplicialMap nerve_map(const Nerve& src, const Nerve& dst, const FinFunctor& f);

// Category of elements of a truncated simplicial set: objects are simplices x,
// and every f: [m] -> [n] gives an arrow x -> f^* x.
struct ElementsCategory {
    SSetPtr sset;
    CatPtr cat;
    std::shared_ptr<const SimplexMapIndex> index;
    std::vector<int> dim;                  // per object
    std::vector<std::size_t> simplex;      // per object
    std::vector<std::size_t> dim_offset;   // first object of each level
    std::vector<SimplexMap> delta;         // per arrow
    std::vector<std::size_t> arrow_base;   // first arrow out of each object
    std::vector<std::size_t> map_offset;   // per (n, m): offset of maps [m] -> [n] inside an out-list

    ObjectId object_of(int n, std::size_t x) const {
        return static_cast<ObjectId>(dim_offset[static_cast<std::size_t>(n)] + x);
    }
    ArrowId arrow_of(ObjectId src, const SimplexMap& f) const;
};

ElementsCategory elements(const SSetPtr& x, const Limits& limits = {});
FinFunctor elements_functor(const ElementsCategory& src, const ElementsCategory& dst, const SimplicialMap& f);

// The simplicial replacement of C truncated at N, with head and tail functors.
struct Replacement {
    CatPtr base, base_op;
    int level = 0;
    Nerve nerve;
    ElementsCategory elements;
    FinFunctor head;   // to C
    FinFunctor tail;   // to C^op
    FinFunctor to_delta;  // to the opposite of the truncated simplex category
    std::shared_ptr<const SimplexCategory> delta_cat;

    const CatPtr& cat() const { return elements.cat; }
    const SimplexString& string(ObjectId c) const {
        return nerve.strings[static_cast<std::size_t>(elements.dim[c])][elements.simplex[c]];
    }
    const SimplexMap& delta(ArrowId a) const { return elements.delta[a]; }
    ObjectId object_of(const SimplexString& s) const {
        return elements.object_of(s.dim(), nerve.index_of(s));
    }
    ArrowId arrow_of(ObjectId src, const SimplexMap& f) const { return elements.arrow_of(src, f); }
    // Composite c_from -> c_to inside the string; identity when from == to.
    ArrowId composite(ObjectId c, int from, int to) const;
};

Replacement simplicial_replacement(const CatPtr& c, int level, const Limits& limits = {});

struct WitnessCheck {
    std::string relation;
    bool holds = false;
};

// Zigzag showing that a head-identity map is inverted by localising at Segal maps.
struct LocalisationWitness {
    ArrowId map = no_arrow;
    int dropped = 0;  // length of the identity prefix removed by the map
    ArrowId anti_segal_part = no_arrow, initial_part = no_arrow;
    ArrowId gamma = no_arrow, alpha_prime = no_arrow;
    ArrowId beta = no_arrow, degeneracy = no_arrow, segal_unit = no_arrow;
    std::vector<WitnessCheck> checks;
    bool verified() const;
};

std::vector<LocalisationWitness> localisation_witnesses(const Replacement& r);

// k-fold concatenation [n] * ... * [n] = [k(n+1)-1] on objects and maps.
SimplexMap concatenate(int k, const SimplexMap& f);
TruncatedSSet edgewise_subdivide(int k, const TruncatedSSet& x, std::optional<int> level = std::nullopt);

}  // namespace catkit
