#pragma once

#include "livelab/temporal/expr.hpp"

namespace livelab::temporal {

// Pushes time scope down to the atoms: the result contains no Alw/Evt/During/Lasts/After/NfSet,
// every atom sits directly under an At, and time quantifiers carry explicit bounds. The outermost
// time is 0.
ExprPtr normalize_at(const ExprPtr& e);

// Rewrites During, Lasts, After and NfSet into Each-quantified At forms.
ExprPtr desugar(const ExprPtr& e);

} // namespace livelab::temporal
