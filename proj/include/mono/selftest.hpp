#pragma once

#include <string>
#include <vector>

#include "mono/json_io.hpp"

namespace mono::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Acceptance criteria, scaled down when quick = true. The external-oracle
// halves of criteria 8 and 10 (recessive Weber solution, period quadrature)
// live in the acceptance suite; here criterion 8 covers the tolerance
// stability clause and criterion 10 the sweep itself.
CriterionResult rank_law(bool quick);
CriterionResult cluster_identities(bool quick);
CriterionResult tag_rule();
CriterionResult degeneracy_classifier(bool quick);
CriterionResult good_search(bool quick);
CriterionResult eigenvalue_lemma();
CriterionResult stokes_geometry();
CriterionResult weber_stability(bool quick);
CriterionResult nondegeneracy_theorem(bool quick);
CriterionResult wkb_sweep_runs(bool quick);
CriterionResult determinism();

std::vector<CriterionResult> run(bool quick);

Json report_json(const std::vector<CriterionResult>& results);
std::string report_text(const std::vector<CriterionResult>& results);
bool all_pass(const std::vector<CriterionResult>& results);

// Shared helpers for the acceptance suite.
std::vector<MarkedBorderedSurface> catalog_surfaces();
CoordinateTuple random_regular_tuple(const IdealTriangulation& T, uint64_t seed, double lo,
                                     double hi);

} // namespace mono::selftest
