#pragma once

#include <catkit/deltacat.hpp>
#include <catkit/fincat.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace catkit {

using Integer = boost::multiprecision::cpp_int;

// Sparse integer matrix stored by columns; each column is sorted by row.
struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::size_t, Integer>>> columns;
};

// Nonzero invariant factors of the Smith normal form, each dividing the next.
std::vector<Integer> invariant_factors(IntMatrix m);

// Normalized chains in degrees 0..top; boundary[n] maps degree n to degree n-1.
struct ChainComplex {
    int top = 0;
    std::vector<std::vector<std::size_t>> basis;  // nondegenerate simplices per degree
    std::vector<IntMatrix> boundary;
};

ChainComplex normalized_chains(const TruncatedSSet& x, int top);

struct HomologyResult {
    std::vector<std::size_t> betti;
    std::vector<std::vector<Integer>> torsion;
    int valid_to = -1;
    bool operator==(const HomologyResult&) const = default;
    bool trivial_reduced() const;
    std::string str() const;
};

// Degrees 0..top-1 are exact; degree top is not reported.
HomologyResult homology(const ChainComplex& c);
HomologyResult homology(const TruncatedSSet& x, int d);
HomologyResult nerve_homology(const CatPtr& c, int d, const Limits& limits = {});

struct HomologyComparison {
    bool equal = false;
    int compared_to = -1;
};

HomologyComparison homology_equal(const TruncatedSSet& x, const TruncatedSSet& y, int d);

enum class Contractibility { certified, homology_trivial, not_contractible, empty };

std::string to_string(Contractibility c);

struct ContractibilityVerdict {
    Contractibility kind = Contractibility::empty;
    int depth = 0;
    std::string witness;
    std::optional<HomologyResult> homology;
    std::string str() const;
};

// Initial or terminal objects certify; otherwise reduced homology of the nerve up to d-1 is evidence.
ContractibilityVerdict contractibility(const CatPtr& c, int d, const Limits& limits = {});

// Verdict for a family of checks: any failure refutes, all certified certifies.
enum class Verdict { certified, evidence_only, refuted };
std::string to_string(Verdict v);
Verdict combine(Verdict a, Contractibility c);

}  // namespace catkit
