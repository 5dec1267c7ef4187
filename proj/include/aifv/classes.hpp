#pragma once

#include "aifv/core.hpp"
#include "aifv/prefix_sets.hpp"

#include <array>
#include <span>

namespace aifv {

enum class CodeClass { Ext, Reg, Dec2, F0, F1, F2, F3, F4, Aifv };

inline constexpr std::array<CodeClass, 9> all_classes{CodeClass::Ext, CodeClass::Reg, CodeClass::Dec2,
                                                      CodeClass::F0,  CodeClass::F1,  CodeClass::F2,
                                                      CodeClass::F3,  CodeClass::F4,  CodeClass::Aifv};

std::string_view to_string(CodeClass c);

struct ClassReport {
    std::array<bool, all_classes.size()> flags{};
    // first violated clause with its witness; empty for classes that hold
    std::array<std::string, all_classes.size()> failing;
    // longest b examined for AIFV clause (vii)
    std::size_t aifv_horizon = 0;

    bool in(CodeClass c) const { return flags[static_cast<std::size_t>(c)]; }
    const std::string& why_not(CodeClass c) const { return failing[static_cast<std::size_t>(c)]; }
    // Most specific description, e.g. "F_0 \ F_1" or "F_AIFV".
    std::string label() const;
};

struct AifvCheck {
    bool ok = false;
    std::string failing_clause;
    std::size_t horizon = 0;
};

AifvCheck is_aifv(const PrefixSetTable& T);
AifvCheck is_aifv(const CodeTuple& F);

ClassReport classify(const PrefixSetTable& T);
ClassReport classify(const CodeTuple& F);
// As above; regularity is additionally cross-checked against the stationary system under μ.
ClassReport classify(const CodeTuple& F, const SourceDist& mu);

// F_0 ⊇ F_1 ⊇ F_2 ⊇ F_3 ⊇ F_4 ⊇ F_AIFV and F_0 = F_reg ∩ F_ext ∩ F_2dec for every report.
bool verify_hierarchy(std::span<const ClassReport> reports);

}  // namespace aifv
