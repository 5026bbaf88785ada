#pragma once

#include <catkit/fincat.hpp>

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace catkit::detail {

using Key = std::vector<std::uint32_t>;

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::size_t h = k.size() * 0x9e3779b97f4a7c15ULL;
        for (auto v : k) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

// Category whose objects and arrows are identified by integer tuples.
// Arrows are keyed by (src, dst, data); composition is supplied on data.
class TupleCategory {
public:
    explicit TupleCategory(const Limits& limits, std::string what) : limits_(limits), what_(std::move(what)) {}

    ObjectId add_object(Key key, std::string name) {
        auto id = static_cast<ObjectId>(object_keys_.size());
        object_index_.emplace(key, id);
        object_keys_.push_back(std::move(key));
        builder_.add_object(std::move(name));
        limits_.check(object_keys_.size() + arrow_data_.size(), what_);
        return id;
    }

    std::optional<ObjectId> find_object(const Key& key) const {
        auto it = object_index_.find(key);
        if (it == object_index_.end()) return std::nullopt;
        return it->second;
    }

    ArrowId add_arrow(ObjectId s, ObjectId t, Key data, std::string name, bool identity = false) {
        ArrowId id = builder_.add_arrow(std::move(name), s, t);
        Key full;
        full.reserve(data.size() + 2);
        full.push_back(s);
        full.push_back(t);
        full.insert(full.end(), data.begin(), data.end());
        arrow_index_.emplace(std::move(full), id);
        arrow_data_.push_back(std::move(data));
        if (identity) builder_.set_identity(s, id);
        limits_.check(object_keys_.size() + arrow_data_.size(), what_);
        return id;
    }

    std::optional<ArrowId> find_arrow(ObjectId s, ObjectId t, const Key& data) const {
        Key full;
        full.reserve(data.size() + 2);
        full.push_back(s);
        full.push_back(t);
        full.insert(full.end(), data.begin(), data.end());
        auto it = arrow_index_.find(full);
        if (it == arrow_index_.end()) return std::nullopt;
        return it->second;
    }

    const Key& object_key(ObjectId x) const { return object_keys_[x]; }
    const Key& arrow_data(ArrowId f) const { return arrow_data_[f]; }
    ObjectId src(ArrowId f) const { return builder_.src(f); }
    ObjectId dst(ArrowId f) const { return builder_.dst(f); }
    std::size_t num_objects() const { return object_keys_.size(); }
    std::size_t num_arrows() const { return arrow_data_.size(); }

    // compose_data(g, f) returns the data of g after f.
    FinCat build(const std::function<Key(ArrowId g, ArrowId f)>& compose_data) {
        return builder_.build([&](ArrowId g, ArrowId f) -> ArrowId {
            auto found = find_arrow(builder_.src(f), builder_.dst(g), compose_data(g, f));
            return found ? *found : no_arrow;
        });
    }

private:
    const Limits& limits_;
    std::string what_;
    FinCat::Builder builder_;
    std::vector<Key> object_keys_;
    std::vector<Key> arrow_data_;
    std::unordered_map<Key, ObjectId, KeyHash> object_index_;
    std::unordered_map<Key, ArrowId, KeyHash> arrow_index_;
};

}  // namespace catkit::detail
