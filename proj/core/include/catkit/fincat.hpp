#pragma once

#include <catkit/error.hpp>

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace catkit {

using ObjectId = std::uint32_t;
using ArrowId = std::uint32_t;
inline constexpr ArrowId no_arrow = std::numeric_limits<ArrowId>::max();

// A finite category stored as explicit tables.
// compose(g, f) is g after f and is defined exactly when dst(f) == src(g).
class FinCat {
public:
    class Builder;

    FinCat() = default;

    std::size_t num_objects() const { return object_names_.size(); }
    std::size_t num_arrows() const { return arrow_names_.size(); }

    const std::string& object_name(ObjectId x) const { return object_names_[x]; }
    const std::string& arrow_name(ArrowId f) const { return arrow_names_[f]; }

    ObjectId src(ArrowId f) const { return src_[f]; }
    ObjectId dst(ArrowId f) const { return dst_[f]; }
    ArrowId identity(ObjectId x) const { return identity_[x]; }
    bool is_identity(ArrowId f) const { return identity_[src_[f]] == f; }

    ArrowId compose(ArrowId g, ArrowId f) const {
        if (src_[g] != dst_[f]) return no_arrow;
        return table_[row_offset_[f] + out_position_[g]];
    }

    std::span<const ArrowId> out_arrows(ObjectId x) const {
        return {out_.data() + out_offset_[x], out_.data() + out_offset_[x + 1]};
    }
    std::span<const ArrowId> in_arrows(ObjectId x) const {
        return {in_.data() + in_offset_[x], in_.data() + in_offset_[x + 1]};
    }
    std::span<const ArrowId> hom(ObjectId a, ObjectId b) const;

    std::optional<ObjectId> find_object(std::string_view name) const;
    std::optional<ArrowId> find_arrow(std::string_view name) const;

private:
    std::vector<std::string> object_names_;
    std::vector<std::string> arrow_names_;
    std::vector<ObjectId> src_, dst_;
    std::vector<ArrowId> identity_;
    // out_ is grouped by source and sorted by (dst, id) inside each group.
    std::vector<std::size_t> out_offset_, in_offset_;
    std::vector<ArrowId> out_, in_;
    std::vector<std::uint32_t> out_position_;
    std::vector<std::size_t> row_offset_;
    std::vector<ArrowId> table_;
    std::unordered_map<std::string, ObjectId> object_index_;
    std::unordered_map<std::string, ArrowId> arrow_index_;
};

using CatPtr = std::shared_ptr<const FinCat>;

inline CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

class FinCat::Builder {
public:
    ObjectId add_object(std::string name);
    ArrowId add_arrow(std::string name, ObjectId src, ObjectId dst);
    // Adds a fresh arrow named id_<object> and registers it as the identity.
    ArrowId add_identity(ObjectId x);
    void set_identity(ObjectId x, ArrowId f);
    void set_composite(ArrowId g, ArrowId f, ArrowId gf);

    std::size_t num_objects() const { return object_names_.size(); }
    std::size_t num_arrows() const { return arrow_names_.size(); }
    ObjectId src(ArrowId f) const { return src_[f]; }
    ObjectId dst(ArrowId f) const { return dst_[f]; }
    ArrowId identity(ObjectId x) const { return identity_[x]; }

    // Entries missing from the explicit table are filled by the unit laws when possible;
    // anything else stays undefined and is reported by validate().
    FinCat build();
    FinCat build(const std::function<ArrowId(ArrowId g, ArrowId f)>& compose);

private:
    FinCat finish(const std::function<ArrowId(ArrowId g, ArrowId f)>& compose);

    std::vector<std::string> object_names_;
    std::vector<std::string> arrow_names_;
    std::vector<ObjectId> src_, dst_;
    std::vector<ArrowId> identity_;
    std::unordered_map<std::uint64_t, ArrowId> explicit_;
};

// Structural laws: identities, totality of the table, endpoints, unit laws, associativity.
CheckReport validate(const FinCat& c);

FinCat opposite(const FinCat& c);
bool is_iso(const FinCat& c, ArrowId f);
std::optional<ArrowId> inverse(const FinCat& c, ArrowId f);
// Composite of a path given in application order; the path must be nonempty.
ArrowId compose_path(const FinCat& c, std::span<const ArrowId> path);

class FinFunctor {
public:
    FinFunctor() = default;
    FinFunctor(CatPtr dom, CatPtr cod, std::vector<ObjectId> on_objects, std::vector<ArrowId> on_arrows)
        : dom_(std::move(dom)), cod_(std::move(cod)), objects_(std::move(on_objects)),
          arrows_(std::move(on_arrows)) {}

    const CatPtr& dom() const { return dom_; }
    const CatPtr& cod() const { return cod_; }
    ObjectId obj(ObjectId x) const { return objects_[x]; }
    ArrowId arr(ArrowId f) const { return arrows_[f]; }
    const std::vector<ObjectId>& object_map() const { return objects_; }
    const std::vector<ArrowId>& arrow_map() const { return arrows_; }

private:
    CatPtr dom_, cod_;
    std::vector<ObjectId> objects_;
    std::vector<ArrowId> arrows_;
};

CheckReport validate(const FinFunctor& f);
FinFunctor identity_functor(const CatPtr& c);
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
FinFunctor constant_functor(const CatPtr& dom, const CatPtr& cod, ObjectId value);
bool same_tables(const FinFunctor& a, const FinFunctor& b);

struct NatTrans {
    FinFunctor source, target;
    std::vector<ArrowId> components;
};

CheckReport validate(const NatTrans& t);

class MapSubset {
public:
    MapSubset() = default;
    explicit MapSubset(CatPtr carrier) : carrier_(std::move(carrier)), member_(carrier_->num_arrows(), 0) {}

    static MapSubset all(const CatPtr& c);
    static MapSubset isos(const CatPtr& c);
    static MapSubset identities(const CatPtr& c);

    const CatPtr& carrier() const { return carrier_; }
    bool contains(ArrowId f) const { return member_[f] != 0; }
    void insert(ArrowId f) { member_[f] = 1; }
    std::size_t size() const;

private:
    CatPtr carrier_;
    std::vector<char> member_;
};

// Comma category f/g for f: A -> C <- B: g. Objects (a, b, u: f a -> g b).
struct CommaCategory {
    CatPtr cat;
    FinFunctor to_left, to_right;
    struct Object {
        ObjectId left, right;
        ArrowId link;
    };
    std::vector<Object> objects;
};

CommaCategory comma(const FinFunctor& f, const FinFunctor& g, const Limits& limits = {});
// The under category b/f.
CommaCategory under(ObjectId b, const FinFunctor& f, const Limits& limits = {});

struct UniversalObject {
    std::optional<ObjectId> object;  // least index among candidates
    std::size_t count = 0;
    bool unique() const { return count == 1; }
};

UniversalObject find_initial(const FinCat& c);
UniversalObject find_terminal(const FinCat& c);

struct AdjunctionVerdict {
    bool holds = false;
    std::optional<NatTrans> unit, counit;
    std::optional<ObjectId> witness_a, witness_b;
    std::string witness;
};

// l: A -> B, r: B -> A. Searches the counit and verifies the hom bijections,
// naturality and both triangle identities.
AdjunctionVerdict check_adjunction(const FinFunctor& l, const FinFunctor& r);

struct EquivalenceVerdict {
    bool faithful = false, full = false, essentially_surjective = false;
    bool holds() const { return faithful && full && essentially_surjective; }
    std::string witness;
};

EquivalenceVerdict is_equivalence(const FinFunctor& f);

std::optional<FinFunctor> find_isomorphism(const CatPtr& a, const CatPtr& b, const Limits& limits = {});

// Standard shapes.
FinCat ordinal(int n);
FinCat discrete(std::size_t k);
FinCat cyclic_group(std::size_t n);
FinCat codiscrete(std::size_t k);
FinCat product(const FinCat& a, const FinCat& b);

// Path category on generators modulo rewriting rules lhs -> rhs.
// Words are in application order; rules must be shortlex decreasing.
struct Generator {
    std::string name;
    ObjectId src, dst;
};
struct Rewrite {
    std::vector<std::size_t> lhs, rhs;
};
FinCat close_generators(const std::vector<std::string>& objects, const std::vector<Generator>& gens,
                        const std::vector<Rewrite>& rules, const Limits& limits = {});

// Formal inversion of a class of maps, enumerated by coset enumeration on every hom set.
struct Localization {
    CatPtr cat;
    FinFunctor quotient;
    // Inverse class of each arrow of w, indexed by arrow of the source category.
    std::vector<ArrowId> inverse_of;
    // A zigzag representing each class, in application order; second marks an inverted step.
    std::vector<std::vector<std::pair<ArrowId, bool>>> representative;
};

Localization localize(const CatPtr& c, const MapSubset& w, const Limits& limits = {});
// The functor between localisations induced by f, which must send w into w'.
FinFunctor induced_functor(const Localization& src, const Localization& dst, const FinFunctor& f);

}  // namespace catkit
