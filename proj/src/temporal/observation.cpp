#include "livelab/temporal/observation.hpp"

#include <algorithm>

namespace livelab::temporal {

std::string Message::str() const {
    std::string s = kind + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(args[i]);
    }
    return s + ")";
}

namespace {

template <class S>
bool sub(const S& a, const S& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

bool ObservationState::extends(const ObservationState& e) const {
    return sub(e.sent, sent) && sub(e.received, received) && sub(e.voted, voted) && sub(e.learned, learned) &&
           sub(e.executed, executed) && sub(e.responded, responded) && sub(e.requested, requested);
}

bool ObservationState::same_histories(const ObservationState& o) const {
    return sent == o.sent && received == o.received && voted == o.voted && learned == o.learned &&
           executed == o.executed && responded == o.responded && requested == o.requested;
}

} // namespace livelab::temporal
