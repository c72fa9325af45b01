#include "livelab/temporal/trace.hpp"

#include "livelab/errors.hpp"

namespace livelab::temporal {

const ObservationState* Trace::at(Tick t) const {
    if (t < 0) return nullptr;
    const Tick n = length();
    if (t < n) return &states[static_cast<std::size_t>(t)];
    if (!loop_start) return nullptr;
    const Tick l = *loop_start;
    return &states[static_cast<std::size_t>(l + (t - l) % (n - l))];
}

void Trace::validate() const {
    if (states.empty()) throw Error("trace is empty");
    if (loop_start && (*loop_start < 0 || *loop_start >= length())) throw Error("loop_start outside the trace");
    for (std::size_t k = 0; k < states.size(); ++k) {
        const auto& s = states[k];
        if (k > 0 && !s.extends(states[k - 1]))
            throw Error("history shrinks at tick " + std::to_string(k));
        for (const auto& r : s.received)
            if (!s.sent.count(SentFact{r.from, r.msg, r.to}))
                throw Error("message " + r.msg.str() + " received at tick " + std::to_string(k) + " was never sent");
    }
    if (loop_start && !states[static_cast<std::size_t>(*loop_start)].same_histories(states.back()))
        throw Error("lasso histories differ between loop_start and the last state");
}

Trace unroll(const Trace& t, Tick length) {
    Trace out;
    out.config = t.config;
    for (Tick k = 0; k < length; ++k) {
        const auto* s = t.at(k);
        if (!s) break;
        out.states.push_back(*s);
    }
    return out;
}

} // namespace livelab::temporal
