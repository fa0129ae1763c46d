#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "whstab/errors.hpp"
#include "whstab/outcome.hpp"

namespace whstab {

/// The four weakly-hard constraint kinds. Counts are taken over every
/// window of `window` consecutive intervals; a Recovery counts as a
/// completion throughout.
enum class ConstraintKind : std::uint8_t {
    AnyMiss, ///< at most `bound` intervals lack a completion
    AnyHit,  ///< at least `bound` intervals contain a completion
    RowMiss, ///< at most `bound` consecutive intervals lack a completion
    RowHit   ///< at least `bound` consecutive intervals contain a completion
};

struct Constraint {
    ConstraintKind kind;
    int bound;  ///< m for the miss kinds, h for the hit kinds
    int window; ///< k

    static Constraint any_miss(int m, int k) { return make(ConstraintKind::AnyMiss, m, k); }
    static Constraint any_hit(int h, int k) { return make(ConstraintKind::AnyHit, h, k); }
    static Constraint row_miss(int m, int k) { return make(ConstraintKind::RowMiss, m, k); }
    /// Row-miss with the window omitted; the smallest window that can
    /// witness a violation is m+1.
    static Constraint row_miss(int m) { return make(ConstraintKind::RowMiss, m, m + 1); }
    static Constraint row_hit(int h, int k) { return make(ConstraintKind::RowHit, h, k); }

    friend bool operator==(const Constraint&, const Constraint&) = default;

private:
    static Constraint make(ConstraintKind kind, int bound, int window) {
        if (window < 1) throw ParseError("constraint window must be >= 1");
        if (bound < 0) throw ParseError("constraint count must be >= 0");
        if (bound > window) throw ParseError("constraint count must not exceed the window");
        return Constraint{kind, bound, window};
    }
};

/// An ordered, non-empty collection of constraints evaluated jointly
/// under one deadline-handling strategy.
struct ConstraintSet {
    std::vector<Constraint> constraints;
    Strategy strategy = Strategy::Kill;
};

/// A row-miss constraint over its minimal window is the same language as
/// bounding the miss count: <m> == (m, m+1).
inline Constraint normalize_row_constraint(const Constraint& c) {
    if (c.kind != ConstraintKind::RowMiss)
        throw ParseError("normalize_row_constraint expects a row-miss constraint");
    return Constraint::any_miss(c.bound, c.bound + 1);
}

inline std::string to_string(const Constraint& c) {
    const char* name = nullptr;
    switch (c.kind) {
    case ConstraintKind::AnyMiss: name = "anymiss"; break;
    case ConstraintKind::AnyHit: name = "anyhit"; break;
    case ConstraintKind::RowMiss: name = "rowmiss"; break;
    case ConstraintKind::RowHit: name = "rowhit"; break;
    }
    return std::string(name) + "(" + std::to_string(c.bound) + "," + std::to_string(c.window) + ")";
}

/// Parses the textual syntax "anymiss(m,k)", "anyhit(h,k)",
/// "rowmiss(m[,k])", "rowhit(h,k)". A rowmiss with omitted window is
/// stored as the equivalent anymiss(m, m+1).
inline Constraint parse_constraint(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw ParseError("malformed constraint \"" + std::string(text) + "\"");
    const std::string name = s.substr(0, open);
    const std::string args = s.substr(open + 1, s.size() - open - 2);

    std::vector<int> vals;
    std::size_t pos = 0;
    while (pos <= args.size()) {
        const auto comma = args.find(',', pos);
        const std::string tok = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw ParseError("malformed constraint arguments in \"" + std::string(text) + "\"");
        try {
            std::size_t used = 0;
            vals.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("non-integer constraint argument \"" + tok + "\"");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }

    if (name == "anymiss" && vals.size() == 2) return Constraint::any_miss(vals[0], vals[1]);
    if (name == "anyhit" && vals.size() == 2) return Constraint::any_hit(vals[0], vals[1]);
    if (name == "rowhit" && vals.size() == 2) return Constraint::row_hit(vals[0], vals[1]);
    if (name == "rowmiss" && vals.size() == 2) return Constraint::row_miss(vals[0], vals[1]);
    if (name == "rowmiss" && vals.size() == 1) return normalize_row_constraint(Constraint::row_miss(vals[0]));
    throw ParseError("unknown constraint \"" + std::string(text) + "\"");
}

} // namespace whstab
