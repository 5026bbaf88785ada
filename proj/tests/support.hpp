#pragma once

#include <catkit/io.hpp>

#include <filesystem>
#include <functional>
#include <string>

namespace catkit::test {

inline std::filesystem::path corpus(const std::string& relative) {
    return std::filesystem::path(CATKIT_CORPUS_DIR) / relative;
}

// One workspace per test binary so that a file loaded twice yields the same category.
inline Workspace& workspace() {
    static Workspace ws;
    return ws;
}

inline CatPtr corpus_category(const std::string& name) {
    return workspace().load_category(corpus("categories/" + name + ".json"));
}
inline FinFunctor corpus_functor(const std::string& name) {
    return workspace().load_functor(corpus("functors/" + name + ".json"));
}
inline MarkedIndexedCat corpus_fibration(const std::string& name) {
    return workspace().load_indexed(corpus("fibrations/" + name + ".json"));
}

inline const std::vector<std::string>& corpus_categories() {
    static const std::vector<std::string> names{"point", "arrow", "chain2", "discrete2", "bz2", "iso2", "square"};
    return names;
}
inline const std::vector<std::string>& corpus_fibrations() {
    static const std::vector<std::string> names{"constant", "chain", "terminal_correction", "collapse", "over_point"};
    return names;
}

// Every functor a -> b, by backtracking over object images and hom-sets; identities are forced.
inline std::vector<FinFunctor> all_functors(const CatPtr& a, const CatPtr& b) {
    std::vector<FinFunctor> out;
    std::vector<ObjectId> objs(a->num_objects());
    std::vector<ArrowId> arrs(a->num_arrows());
    std::function<void(ArrowId)> arrows = [&](ArrowId f) {
        if (f == a->num_arrows()) {
            FinFunctor g(a, b, objs, arrs);
            if (validate(g)) out.push_back(std::move(g));
            return;
        }
        if (a->is_identity(f)) {
            arrs[f] = b->identity(objs[a->src(f)]);
            return arrows(f + 1);
        }
        for (ArrowId h : b->hom(objs[a->src(f)], objs[a->dst(f)])) {
            arrs[f] = h;
            arrows(f + 1);
        }
    };
    std::function<void(ObjectId)> objects = [&](ObjectId x) {
        if (x == a->num_objects()) return arrows(0);
        for (ObjectId y = 0; y < b->num_objects(); ++y) {
            objs[x] = y;
            objects(x + 1);
        }
    };
    objects(0);
    return out;
}

}  // namespace catkit::test
