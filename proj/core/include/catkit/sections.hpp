#pragma once

#include <catkit/extension.hpp>
#include <catkit/fibration.hpp>

#include <functional>
#include <string>
#include <vector>

namespace catkit {

// A strict section of the opfibration presented by an indexed category.
struct Section {
    std::vector<ObjectId> values;     // per base object
    std::vector<ArrowId> structure;   // per base arrow f: f_! X(src f) -> X(dst f)
    bool operator==(const Section&) const = default;
};

// Endpoints, identities and the cocycle sigma(g f) = sigma(g) o g_!(sigma(f)).
CheckReport validate(const IndexedCat& e, const Section& s);

// Optional filter consulted as soon as a structure map is chosen.
using StructureFilter = std::function<bool(const Section& partial, ArrowId f)>;

std::vector<Section> enumerate_sections(const IndexedCat& e, const Limits& limits = {},
                                        const StructureFilter& accept = {});

// Presections are sections of the extension viewed as an indexed category over the replacement.
Section embed(const SimplicialExtension& x, const Section& s);
// Every Segal map goes to a structure map whose adjunct is invertible.
bool sends_segal_to_cartesian(const SimplicialExtension& x, const Section& presection, ArrowId alpha);

struct ComponentWitness {
    ArrowId map = no_arrow;   // arrow of the replacement, or of its fibre for comparisons
    int component = 0;
    std::string description;
};

enum class SegalCriterion { composite_adjunct, head_adjunct, adjacent };
std::string to_string(SegalCriterion c);

struct SegalVerdict {
    bool pass = false;
    SegalCriterion criterion = SegalCriterion::composite_adjunct;
    std::vector<ComponentWitness> witnesses;
    bool cross_checked = false;
    bool criteria_agree = true;
    std::string convention = "strict convention: derived adjoints are taken underived";
};

struct SegalOptions {
    bool two_of_three = false;
    std::size_t max_witnesses = 8;
};

// Adjuncts along Segal maps must be componentwise weak equivalences.
SegalVerdict check_segal_criterion(const SimplicialExtension& x, const Section& presection,
                                   const MarkedIndexedCat& w, SegalCriterion criterion,
                                   std::size_t max_witnesses = 8);
SegalVerdict is_segal(const SimplicialExtension& x, const Section& presection, const MarkedIndexedCat& w,
                      const SegalOptions& options = {});

enum class LocalCriterion { decolouring, over_subset };
std::string to_string(LocalCriterion c);

struct LocallyConstantVerdict {
    bool pass = false;
    std::vector<ComponentWitness> witnesses;
    bool cross_checked = false;
    bool criteria_agree = true;
    std::string convention = "strict convention: derived pushforwards are taken underived";
};

LocallyConstantVerdict check_local_criterion(const SimplicialExtension& x, const Section& presection,
                                             const MarkedIndexedCat& w, const MapSubset& s,
                                             LocalCriterion criterion, std::size_t max_witnesses = 8);
// The presection must be Segal; the over-subset comparison needs s to contain identities,
// be closed under composition and under taking factors.
LocallyConstantVerdict is_locally_constant(const SimplicialExtension& x, const Section& presection,
                                           const MarkedIndexedCat& w, const MapSubset& s,
                                           const SegalOptions& options = {});
CheckReport check_factor_closed(const MapSubset& s);

struct HoSection {
    IndexedCat ho;
    std::vector<Localization> fibres;
    Section section;
    CheckReport valid;
};

// Fibrewise localisation at w with the section induced by a Segal presection.
HoSection section_to_ho(const SimplicialExtension& x, const Section& presection, const MarkedIndexedCat& w,
                        const Limits& limits = {});

}  // namespace catkit
