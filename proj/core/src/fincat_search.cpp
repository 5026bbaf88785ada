#include <catkit/fincat.hpp>

#include "tuple_category.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace catkit {

namespace {

struct Triple {
    ArrowId second, first, composite;
};

class IsoSearch {
public:
    IsoSearch(const FinCat& a, const FinCat& b, const Limits& limits) : a_(a), b_(b), budget_(limits.max_items * 100) {}

    std::optional<std::pair<std::vector<ObjectId>, std::vector<ArrowId>>> run() {
        if (a_.num_objects() != b_.num_objects() || a_.num_arrows() != b_.num_arrows()) return std::nullopt;
        objects_.assign(a_.num_objects(), no_arrow);
        used_objects_.assign(b_.num_objects(), 0);
        if (!assign_object(0)) return std::nullopt;
        return std::pair(objects_, arrows_);
    }

private:
    bool assign_object(ObjectId x) {
        if (x == a_.num_objects()) return assign_arrows();
        for (ObjectId y = 0; y < b_.num_objects(); ++y) {
            if (used_objects_[y] || !compatible(x, y)) continue;
            objects_[x] = y;
            used_objects_[y] = 1;
            if (assign_object(x + 1)) return true;
            used_objects_[y] = 0;
        }
        objects_[x] = no_arrow;
        return false;
    }

    bool compatible(ObjectId x, ObjectId y) const {
        if (a_.out_arrows(x).size() != b_.out_arrows(y).size() || a_.in_arrows(x).size() != b_.in_arrows(y).size())
            return false;
        for (ObjectId z = 0; z < x; ++z) {
            if (a_.hom(x, z).size() != b_.hom(y, objects_[z]).size()) return false;
            if (a_.hom(z, x).size() != b_.hom(objects_[z], y).size()) return false;
        }
        return a_.hom(x, x).size() == b_.hom(y, y).size();
    }

    bool assign_arrows() {
        arrows_.assign(a_.num_arrows(), no_arrow);
        used_arrows_.assign(b_.num_arrows(), 0);
        anchored_.assign(a_.num_arrows(), {});
        for (ArrowId f = 0; f < a_.num_arrows(); ++f)
            for (ArrowId g : a_.out_arrows(a_.dst(f))) {
                ArrowId gf = a_.compose(g, f);
                ArrowId last = std::max({f, g, gf});
                anchored_[last].push_back({g, f, gf});
            }
        return assign_arrow(0);
    }

    bool assign_arrow(ArrowId f) {
        if (f == a_.num_arrows()) return true;
        if (budget_ == 0) throw Error(ErrorKind::size_cap, "isomorphism search exceeded its budget");
        --budget_;
        auto candidates = b_.hom(objects_[a_.src(f)], objects_[a_.dst(f)]);
        for (ArrowId g : candidates) {
            if (used_arrows_[g]) continue;
            if (a_.is_identity(f) != b_.is_identity(g)) continue;
            arrows_[f] = g;
            bool ok = true;
            for (const auto& t : anchored_[f])
                if (b_.compose(arrows_[t.second], arrows_[t.first]) != arrows_[t.composite]) {
                    ok = false;
                    break;
                }
            if (ok) {
                used_arrows_[g] = 1;
                if (assign_arrow(f + 1)) return true;
                used_arrows_[g] = 0;
            }
        }
        arrows_[f] = no_arrow;
        return false;
    }

    const FinCat& a_;
    const FinCat& b_;
    std::size_t budget_;
    std::vector<ObjectId> objects_;
    std::vector<char> used_objects_;
    std::vector<ArrowId> arrows_;
    std::vector<char> used_arrows_;
    std::vector<std::vector<Triple>> anchored_;
};

}  // namespace

std::optional<FinFunctor> find_isomorphism(const CatPtr& a, const CatPtr& b, const Limits& limits) {
    IsoSearch search(*a, *b, limits);
    auto found = search.run();
    if (!found) return std::nullopt;
    return FinFunctor(a, b, std::move(found->first), std::move(found->second));
}

namespace {

using Word = std::vector<std::size_t>;

bool shortlex_less(const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
}

Word reduce(Word w, const std::vector<Rewrite>& rules) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules) {
            if (r.lhs.empty() || r.lhs.size() > w.size()) continue;
            auto it = std::search(w.begin(), w.end(), r.lhs.begin(), r.lhs.end());
            if (it == w.end()) continue;
            auto pos = it - w.begin();
            Word next(w.begin(), it);
            next.insert(next.end(), r.rhs.begin(), r.rhs.end());
            next.insert(next.end(), w.begin() + pos + static_cast<std::ptrdiff_t>(r.lhs.size()), w.end());
            w = std::move(next);
            changed = true;
            break;
        }
    }
    return w;
}

}  // namespace

FinCat close_generators(const std::vector<std::string>& objects, const std::vector<Generator>& gens,
                        const std::vector<Rewrite>& rules, const Limits& limits) {
    auto endpoint = [&](ObjectId start, const Word& w) {
        ObjectId at = start;
        for (auto s : w) {
            if (gens[s].src != at) return std::optional<ObjectId>{};
            at = gens[s].dst;
        }
        return std::optional<ObjectId>{at};
    };
    for (const auto& g : gens)
        if (g.src >= objects.size() || g.dst >= objects.size())
            throw Error(ErrorKind::validation, "generator '" + g.name + "' has an endpoint outside the object list");
    for (const auto& r : rules) {
        if (!shortlex_less(r.rhs, r.lhs))
            throw Error(ErrorKind::validation, "rewrite rules must be shortlex decreasing");
        for (auto s : r.lhs)
            if (s >= gens.size()) throw Error(ErrorKind::validation, "rewrite rule uses an unknown generator");
        for (auto s : r.rhs)
            if (s >= gens.size()) throw Error(ErrorKind::validation, "rewrite rule uses an unknown generator");
        ObjectId start = gens[r.lhs.front()].src;
        auto e1 = endpoint(start, r.lhs);
        auto e2 = r.rhs.empty() ? std::optional<ObjectId>{start} : endpoint(start, r.rhs);
        if (!e1 || !e2 || *e1 != *e2 || (!r.rhs.empty() && gens[r.rhs.front()].src != start))
            throw Error(ErrorKind::validation, "rewrite rule relates paths that are not parallel");
    }

    struct Element {
        ObjectId src, dst;
        Word word;
    };
    std::vector<Element> elements;
    std::map<std::pair<ObjectId, Word>, ArrowId> index;
    std::deque<ArrowId> queue;
    for (ObjectId x = 0; x < objects.size(); ++x) {
        index[{x, {}}] = static_cast<ArrowId>(elements.size());
        queue.push_back(static_cast<ArrowId>(elements.size()));
        elements.push_back({x, x, {}});
    }
    while (!queue.empty()) {
        ArrowId e = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < gens.size(); ++s) {
            if (gens[s].src != elements[e].dst) continue;
            Word w = elements[e].word;
            w.push_back(s);
            w = reduce(std::move(w), rules);
            auto key = std::pair(elements[e].src, w);
            if (index.count(key)) continue;
            if (elements.size() >= limits.max_closure_arrows)
                throw Error(ErrorKind::size_cap, "generator closure exceeded " +
                                                     std::to_string(limits.max_closure_arrows) + " arrows");
            index[key] = static_cast<ArrowId>(elements.size());
            queue.push_back(static_cast<ArrowId>(elements.size()));
            elements.push_back({elements[e].src, gens[s].dst, std::move(w)});
        }
    }

    FinCat::Builder b;
    for (const auto& o : objects) b.add_object(o);
    for (const auto& el : elements) {
        std::string name;
        if (el.word.empty()) {
            name = "id_" + objects[el.src];
        } else {
            for (auto it = el.word.rbegin(); it != el.word.rend(); ++it) {
                if (!name.empty()) name += ".";
                name += gens[*it].name;
            }
        }
        ArrowId f = b.add_arrow(name, el.src, el.dst);
        if (el.word.empty()) b.set_identity(el.src, f);
    }
    return b.build([&](ArrowId g, ArrowId f) -> ArrowId {
        Word w = elements[f].word;
        w.insert(w.end(), elements[g].word.begin(), elements[g].word.end());
        auto it = index.find({elements[f].src, reduce(std::move(w), rules)});
        return it == index.end() ? no_arrow : it->second;
    });
}

namespace {

// Coset enumeration of the hom sets out of one object in a category presentation.
class CosetTable {
public:
    struct Symbol {
        ObjectId src, dst;
    };
    struct Relation {
        ObjectId at;
        std::vector<std::size_t> lhs, rhs;
    };

    CosetTable(const std::vector<Symbol>& symbols, const std::vector<std::vector<std::size_t>>& symbols_at,
               const std::vector<std::vector<Relation>>& relations_at, std::size_t cap)
        : symbols_(symbols), symbols_at_(symbols_at), relations_at_(relations_at), cap_(cap) {}

    void enumerate(ObjectId start) {
        new_node(start);
        for (std::size_t n = 0; n < object_.size(); ++n) {
            if (find(n) != n) continue;
            for (const auto& rel : relations_at_[object_[n]]) {
                if (find(n) != n) break;
                std::size_t a = trace(n, rel.lhs);
                std::size_t b = trace(find(n), rel.rhs);
                coincide(a, b);
            }
            if (find(n) != n) continue;
            for (auto s : symbols_at_[object_[n]]) {
                if (find(n) != n) break;
                if (next_[n][s] == none) define(n, s);
            }
        }
    }

    std::size_t find(std::size_t n) {
        while (parent_[n] != n) {
            parent_[n] = parent_[parent_[n]];
            n = parent_[n];
        }
        return n;
    }

    std::size_t step(std::size_t n, std::size_t s) { return find(next_[find(n)][s]); }
    std::size_t size() const { return object_.size(); }
    ObjectId object(std::size_t n) const { return object_[n]; }

    std::size_t trace(std::size_t n, const std::vector<std::size_t>& word) {
        for (auto s : word) {
            n = find(n);
            if (next_[n][s] == none) define(n, s);
            n = find(next_[n][s]);
        }
        return find(n);
    }

    static constexpr std::size_t none = static_cast<std::size_t>(-1);

private:
    std::size_t new_node(ObjectId at) {
        if (object_.size() >= cap_)
            throw Error(ErrorKind::quotient_not_finite,
                        "localisation did not close within " + std::to_string(cap_) + " classes");
        object_.push_back(at);
        parent_.push_back(object_.size() - 1);
        next_.emplace_back(symbols_.size(), none);
        return object_.size() - 1;
    }

    void define(std::size_t n, std::size_t s) {
        std::size_t m = new_node(symbols_[s].dst);
        next_[n][s] = m;
    }

    void coincide(std::size_t a, std::size_t b) {
        std::vector<std::pair<std::size_t, std::size_t>> pending{{a, b}};
        while (!pending.empty()) {
            auto [x, y] = pending.back();
            pending.pop_back();
            x = find(x);
            y = find(y);
            if (x == y) continue;
            if (y < x) std::swap(x, y);
            parent_[y] = x;
            for (std::size_t s = 0; s < symbols_.size(); ++s) {
                if (next_[y][s] == none) continue;
                if (next_[x][s] == none)
                    next_[x][s] = next_[y][s];
                else
                    pending.emplace_back(next_[x][s], next_[y][s]);
            }
        }
    }

    const std::vector<Symbol>& symbols_;
    const std::vector<std::vector<std::size_t>>& symbols_at_;
    const std::vector<std::vector<Relation>>& relations_at_;
    std::size_t cap_;
    std::vector<ObjectId> object_;
    std::vector<std::size_t> parent_;
    std::vector<std::vector<std::size_t>> next_;
};

}  // namespace

Localization localize(const CatPtr& cp, const MapSubset& w, const Limits& limits) {
    const FinCat& c = *cp;
    using Symbol = CosetTable::Symbol;
    using Relation = CosetTable::Relation;
    std::vector<Symbol> symbols;
    std::vector<std::size_t> forward(c.num_arrows(), CosetTable::none), backward(c.num_arrows(), CosetTable::none);
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
        if (c.is_identity(f)) continue;
        forward[f] = symbols.size();
        symbols.push_back({c.src(f), c.dst(f)});
    }
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
        if (c.is_identity(f) || !w.contains(f)) continue;
        backward[f] = symbols.size();
        symbols.push_back({c.dst(f), c.src(f)});
    }
    std::vector<std::vector<std::size_t>> symbols_at(c.num_objects());
    for (std::size_t s = 0; s < symbols.size(); ++s) symbols_at[symbols[s].src].push_back(s);

    auto word_of = [&](ArrowId f) {
        return c.is_identity(f) ? std::vector<std::size_t>{} : std::vector<std::size_t>{forward[f]};
    };
    std::vector<std::vector<Relation>> relations_at(c.num_objects());
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
        if (c.is_identity(f)) continue;
        for (ArrowId g : c.out_arrows(c.dst(f))) {
            if (c.is_identity(g)) continue;
            relations_at[c.src(f)].push_back({c.src(f), {forward[f], forward[g]}, word_of(c.compose(g, f))});
        }
        if (backward[f] != CosetTable::none) {
            relations_at[c.src(f)].push_back({c.src(f), {forward[f], backward[f]}, {}});
            relations_at[c.dst(f)].push_back({c.dst(f), {backward[f], forward[f]}, {}});
        }
    }

    // Enumerate every source object, then read off representative words.
    struct Klass {
        ObjectId src, dst;
        std::size_t node;
        std::vector<std::size_t> word;
    };
    std::vector<CosetTable> tables;
    tables.reserve(c.num_objects());
    std::vector<std::vector<Klass>> classes(c.num_objects());
    std::vector<std::map<std::size_t, ArrowId>> class_of_node(c.num_objects());
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        tables.emplace_back(symbols, symbols_at, relations_at, limits.max_items);
        CosetTable& t = tables.back();
        t.enumerate(x);
        std::deque<std::pair<std::size_t, std::vector<std::size_t>>> queue{{t.find(0), {}}};
        std::map<std::size_t, std::vector<std::size_t>> reached{{t.find(0), {}}};
        while (!queue.empty()) {
            auto [n, word] = queue.front();
            queue.pop_front();
            for (auto s : symbols_at[t.object(n)]) {
                std::size_t m = t.step(n, s);
                if (reached.count(m)) continue;
                auto w2 = word;
                w2.push_back(s);
                reached[m] = w2;
                queue.emplace_back(m, std::move(w2));
            }
        }
        for (auto& [node, word] : reached) classes[x].push_back({x, t.object(node), node, word});
    }

    std::vector<std::pair<ArrowId, bool>> symbol_arrow(symbols.size());
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
        if (forward[f] != CosetTable::none) symbol_arrow[forward[f]] = {f, false};
        if (backward[f] != CosetTable::none) symbol_arrow[backward[f]] = {f, true};
    }

    FinCat::Builder b;
    for (ObjectId x = 0; x < c.num_objects(); ++x) b.add_object(c.object_name(x));
    std::vector<Klass> all;
    for (ObjectId x = 0; x < c.num_objects(); ++x)
        for (auto& k : classes[x]) {
            std::string name;
            if (k.word.empty()) {
                name = "id_" + c.object_name(x);
            } else {
                for (auto it = k.word.rbegin(); it != k.word.rend(); ++it) {
                    if (!name.empty()) name += ".";
                    auto [f, inverted] = symbol_arrow[*it];
                    name += c.arrow_name(f) + (inverted ? "^-1" : "");
                }
            }
            ArrowId id = b.add_arrow(name, k.src, k.dst);
            if (k.word.empty()) b.set_identity(x, id);
            class_of_node[x][k.node] = id;
            all.push_back(k);
        }
    auto class_after = [&](ObjectId x, std::size_t node, const std::vector<std::size_t>& word) {
        std::size_t m = tables[x].find(node);
        for (auto s : word) m = tables[x].step(m, s);
        return class_of_node[x].at(m);
    };
    FinCat loc = b.build([&](ArrowId g, ArrowId f) {
        const Klass& kf = all[f];
        return class_after(kf.src, kf.node, all[g].word);
    });

    Localization out;
    out.cat = share(std::move(loc));
    for (const auto& k : all) {
        std::vector<std::pair<ArrowId, bool>> path;
        for (auto sym : k.word) path.push_back(symbol_arrow[sym]);
        out.representative.push_back(std::move(path));
    }
    std::vector<ObjectId> objs(c.num_objects());
    std::iota(objs.begin(), objs.end(), 0);
    std::vector<ArrowId> arrs(c.num_arrows());
    out.inverse_of.assign(c.num_arrows(), no_arrow);
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
        ObjectId x = c.src(f);
        arrs[f] = class_after(x, tables[x].find(0), word_of(f));
        if (c.is_identity(f))
            out.inverse_of[f] = arrs[f];
        else if (backward[f] != CosetTable::none)
            out.inverse_of[f] = class_after(c.dst(f), tables[c.dst(f)].find(0), {backward[f]});
    }
    out.quotient = FinFunctor(cp, out.cat, std::move(objs), std::move(arrs));
    return out;
}

FinFunctor induced_functor(const Localization& src, const Localization& dst, const FinFunctor& f) {
    const FinCat& a = *src.cat;
    const FinCat& b = *dst.cat;
    std::vector<ArrowId> arrows(a.num_arrows());
    for (ArrowId k = 0; k < a.num_arrows(); ++k) {
        ArrowId acc = b.identity(f.obj(a.src(k)));
        for (auto [g, inverted] : src.representative[k]) {
            ArrowId step = inverted ? dst.inverse_of[f.arr(g)] : dst.quotient.arr(f.arr(g));
            if (step == no_arrow)
                throw Error(ErrorKind::precondition, "functor does not preserve the inverted class at " +
                                                         f.dom()->arrow_name(g));
            acc = b.compose(step, acc);
        }
        arrows[k] = acc;
    }
    return FinFunctor(src.cat, dst.cat, f.object_map(), std::move(arrows));
}

}  // namespace catkit
