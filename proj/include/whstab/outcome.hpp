#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "whstab/errors.hpp"

namespace whstab {

/// What happened to the control task in one time interval.
enum class Outcome : std::uint8_t { Hit = 0, Miss = 1, Recovery = 2 };

/// How a job that missed its deadline is handled.
enum class Strategy : std::uint8_t { Kill, SkipNext };

constexpr int kOutcomeCount = 3;

constexpr char to_char(Outcome o) {
    switch (o) {
    case Outcome::Hit: return 'H';
    case Outcome::Miss: return 'M';
    case Outcome::Recovery: return 'R';
    }
    return '?';
}

inline Outcome outcome_from_char(char c) {
    switch (c) {
    case 'H': return Outcome::Hit;
    case 'M': return Outcome::Miss;
    case 'R': return Outcome::Recovery;
    default: throw ParseError(std::string("unknown outcome character '") + c + "'");
    }
}

/// True when the interval ends with a completed job (Recovery counts).
constexpr bool is_completion(Outcome o) { return o != Outcome::Miss; }

inline std::string to_string(Strategy s) {
    return s == Strategy::Kill ? "kill" : "skip-next";
}

inline Strategy strategy_from_string(std::string_view s) {
    if (s == "kill") return Strategy::Kill;
    if (s == "skip-next") return Strategy::SkipNext;
    throw ParseError("unknown strategy \"" + std::string(s) + "\" (expected \"kill\" or \"skip-next\")");
}

/// The outcome alphabet of a strategy: {H, M} for Kill, {H, M, R} for Skip-Next.
inline const std::vector<Outcome>& alphabet(Strategy s) {
    static const std::vector<Outcome> kill{Outcome::Hit, Outcome::Miss};
    static const std::vector<Outcome> skip{Outcome::Hit, Outcome::Miss, Outcome::Recovery};
    return s == Strategy::Kill ? kill : skip;
}

/// Outcomes that may directly follow `last`. Under Kill every interval
/// releases a fresh job; under Skip-Next a miss defers the next release,
/// so only another miss or a late completion can follow.
inline std::vector<Outcome> successors(Outcome last, Strategy s) {
    if (s == Strategy::Kill) return {Outcome::Hit, Outcome::Miss};
    if (last == Outcome::Miss) return {Outcome::Miss, Outcome::Recovery};
    return {Outcome::Hit, Outcome::Miss};
}

/// A finite sequence of interval outcomes.
using OutcomeString = std::vector<Outcome>;

inline OutcomeString parse_outcomes(std::string_view text) {
    OutcomeString seq;
    seq.reserve(text.size());
    for (char c : text) seq.push_back(outcome_from_char(c));
    return seq;
}

inline std::string to_string(const OutcomeString& seq) {
    std::string out;
    out.reserve(seq.size());
    for (Outcome o : seq) out.push_back(to_char(o));
    return out;
}

/// Throws MalformedSequence unless `seq` obeys the successor relation of
/// `strategy`. A leading Recovery is accepted only when
/// `allow_initial_recovery` is set (arbitrary slices); evolution from
/// startup follows an implicit all-Hit history and forbids it.
inline void validate_sequence(const OutcomeString& seq, Strategy strategy,
                              bool allow_initial_recovery = true) {
    Outcome prev = Outcome::Hit; // ideal startup
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Outcome o = seq[i];
        if (strategy == Strategy::Kill && o == Outcome::Recovery)
            throw MalformedSequence("recovery outcome is not representable under the kill strategy");
        if (i == 0 && o == Outcome::Recovery && allow_initial_recovery) {
            prev = o;
            continue;
        }
        bool ok = false;
        for (Outcome s : successors(prev, strategy)) ok = ok || (s == o);
        if (!ok)
            throw MalformedSequence("outcome '" + std::string(1, to_char(o)) +
                                    "' at position " + std::to_string(i + 1) +
                                    " cannot follow '" + std::string(1, to_char(prev)) + "'");
        prev = o;
    }
}

} // namespace whstab
