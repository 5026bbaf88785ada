#pragma once

#include <catkit/deltacat.hpp>
#include <catkit/extension.hpp>
#include <catkit/fibration.hpp>
#include <catkit/fincat.hpp>
#include <catkit/homotopy.hpp>
#include <catkit/resolution.hpp>
#include <catkit/sections.hpp>

#include <filesystem>
#include <map>
#include <string>

namespace catkit {

// JSON documents. Readers throw Error(validation) on malformed or inconsistent input.
// A category reference is either an inline category or a path relative to the referring file.
// Writers emit sorted keys so output is byte-stable.
class Workspace {
public:
    explicit Workspace(Limits limits = {}) : limits_(limits) {}

    // Table form {"objects", "arrows", "compose", "identities"} or generator form
    // {"objects", "generators", "relations": [{"lhs", "rhs"}]} with words in application order.
    CatPtr load_category(const std::filesystem::path& file);
    CatPtr read_category(const std::string& text, const std::filesystem::path& base = {});
    // {"dom", "cod", "objects": {name: name}, "arrows": {name: name}}; identities may be omitted.
    FinFunctor load_functor(const std::filesystem::path& file);
    FinFunctor read_functor(const std::string& text, const std::filesystem::path& base = {});
    // {"base", "fibres": {obj: ref}, "transitions": {arrow: table}, "weq": {obj: [arrows]} or a preset name}.
    // Transitions of identities and of composites of listed arrows may be omitted; weq defaults to isos
    // and always contains identities.
    MarkedIndexedCat load_indexed(const std::filesystem::path& file);
    MarkedIndexedCat read_indexed(const std::string& text, const std::filesystem::path& base = {});
    // {"N", "simplices": [[names]], "action": {"m->n:values": [names]}}; every face and degeneracy is required,
    // other listed maps are checked against them.
    TruncatedSSet load_sset(const std::filesystem::path& file);
    TruncatedSSet read_sset(const std::string& text);

    const Limits& limits() const { return limits_; }

private:
    friend struct WorkspaceAccess;
    Limits limits_;
    std::map<std::filesystem::path, CatPtr> cache_;
};

WeqPreset parse_weq_preset(const std::string& name);

std::string read_file(const std::filesystem::path& file);

// {"values": {obj: fibre-obj}, "structure": {arrow: fibre-arrow}}; identity structure maps may be omitted.
Section read_section(const IndexedCat& e, const std::string& text);
std::string write_section(const IndexedCat& e, const Section& s);
// Presections: {"values": {string: {"objects", "comparisons"}}, "structure": {map: [components]}}.
Section read_presection(const SimplicialExtension& x, const std::string& text);
std::string write_presection(const SimplicialExtension& x, const Section& s);
// {"arrows": [names]}.
MapSubset read_map_subset(const CatPtr& c, const std::string& text);

std::string write_category(const FinCat& c);
std::string write_functor(const FinFunctor& f);
std::string write_sset(const TruncatedSSet& x);
std::string write_indexed(const MarkedIndexedCat& m);
// {"string", "objects", "comparisons"}.
std::string write_string_section(const IndexedCat& e, const SimplexString& s, const StringSection& a);
// {"betti", "torsion", "valid_to"}.
std::string write_homology(const HomologyResult& h);
std::string write_contractibility(const ContractibilityVerdict& v);
// {"verdict", "per_fibre": [{"string", "verdict", "evidence"}], "skipped"}.
std::string write_report(const DiagnosticReport& r);

}  // namespace catkit
