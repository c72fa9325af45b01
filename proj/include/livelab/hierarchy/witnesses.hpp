#pragma once

#include <vector>

#include "livelab/catalog/catalog.hpp"
#include "livelab/temporal/trace.hpp"

namespace livelab::hierarchy {

// Lasso where `weaker` Holds and `stronger` is Violated. Shipped for every solid edge;
// Fair/Sure(D) is a family indexed by D. Throws NoWitnessShipped otherwise.
temporal::Trace separating_witness(const catalog::CatalogId& weaker, const catalog::CatalogId& stronger);
bool has_witness(const catalog::CatalogId& weaker, const catalog::CatalogId& stronger);

struct Incomparability {
    catalog::CatalogId a, b;
    temporal::Trace a_not_b;  // a Holds, b Violated
    temporal::Trace b_not_a;
};

// (PQ-Extra-Dur(2,2), PQ-Alw) and (Some-Exec, Each-Learn).
std::vector<Incomparability> incomparability_report();

} // namespace livelab::hierarchy
