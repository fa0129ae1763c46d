#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "whstab/constraint.hpp"
#include "whstab/outcome.hpp"

namespace whstab {

namespace detail {

/// Checks one window of exactly `c.window` symbols against the kind's
/// count or run condition.
template <typename WindowAt> // WindowAt: int -> Outcome, indices 0..window-1
bool window_satisfied(const Constraint& c, WindowAt&& at) {
    const int k = c.window;
    switch (c.kind) {
    case ConstraintKind::AnyMiss: {
        int misses = 0;
        for (int i = 0; i < k; ++i) misses += !is_completion(at(i));
        return misses <= c.bound;
    }
    case ConstraintKind::AnyHit: {
        int completions = 0;
        for (int i = 0; i < k; ++i) completions += is_completion(at(i));
        return completions >= c.bound;
    }
    case ConstraintKind::RowMiss: {
        int run = 0, longest = 0;
        for (int i = 0; i < k; ++i) {
            run = is_completion(at(i)) ? 0 : run + 1;
            longest = std::max(longest, run);
        }
        return longest <= c.bound;
    }
    case ConstraintKind::RowHit: {
        int run = 0, longest = 0;
        for (int i = 0; i < k; ++i) {
            run = is_completion(at(i)) ? run + 1 : 0;
            longest = std::max(longest, run);
        }
        return longest >= c.bound;
    }
    }
    return false;
}

/// Window of length c.window ending at position `end` (0-based) of `seq`,
/// padded on the left with the all-Hit startup history.
inline bool window_at_satisfied(const Constraint& c, const OutcomeString& seq, int end) {
    const int start = end - c.window + 1;
    return window_satisfied(c, [&](int i) {
        const int pos = start + i;
        return pos < 0 ? Outcome::Hit : seq[static_cast<std::size_t>(pos)];
    });
}

} // namespace detail

/// True iff every window of `c.window` consecutive symbols of the
/// startup-prefixed sequence (windows ending at positions 1..N) meets the
/// constraint. Throws MalformedSequence when the sequence violates the
/// successor relation; a leading Recovery is accepted as a slice.
inline bool satisfies(const OutcomeString& seq, const Constraint& c, Strategy strategy) {
    validate_sequence(seq, strategy, /*allow_initial_recovery=*/true);
    for (int end = 0; end < static_cast<int>(seq.size()); ++end)
        if (!detail::window_at_satisfied(c, seq, end)) return false;
    return true;
}

inline bool satisfies(const OutcomeString& seq, const ConstraintSet& cs) {
    validate_sequence(seq, cs.strategy, /*allow_initial_recovery=*/true);
    for (const Constraint& c : cs.constraints)
        for (int end = 0; end < static_cast<int>(seq.size()); ++end)
            if (!detail::window_at_satisfied(c, seq, end)) return false;
    return true;
}

inline constexpr int kDefaultEnumerationCap = 20;

/// All length-N strings that evolve from startup (implicit all-Hit
/// history, so the first symbol follows a Hit), respect the successor
/// relation, and satisfy every constraint in `cs`. Lexicographic order
/// with H < M < R.
inline std::vector<OutcomeString> enumerate_satisfaction_set(const ConstraintSet& cs, int n,
                                                             int cap = kDefaultEnumerationCap) {
    if (n > cap)
        throw CapExceeded("enumeration length " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    std::vector<OutcomeString> out;
    OutcomeString cur;
    cur.reserve(static_cast<std::size_t>(std::max(n, 0)));

    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        const Outcome last = cur.empty() ? Outcome::Hit : cur.back();
        for (Outcome o : successors(last, cs.strategy)) {
            cur.push_back(o);
            bool ok = true;
            for (const Constraint& c : cs.constraints)
                ok = ok && detail::window_at_satisfied(c, cur, static_cast<int>(cur.size()) - 1);
            if (ok) rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

} // namespace whstab
