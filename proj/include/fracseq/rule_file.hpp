#pragma once

#include "fracseq/substitution.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fracseq {

class RuleError : public std::runtime_error {
public:
    RuleError(std::string origin, int line, int column, const std::string& msg);
    const std::string& origin() const { return origin_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string origin_;
    int line_;
    int column_;
};

// `source` paths are resolved against base_dir; `source catalog:<id>` names a built-in entry.
SubstitutionSystem parse_rule_text(std::string_view text, std::string origin = "<input>",
                                   const std::filesystem::path& base_dir = {});
SubstitutionSystem load_rule_file(const std::filesystem::path& path);

// Term literal: [-]<perm>[^n][*R][*scale...], perm as [..] or a name (id, mu, tx, ty, td, tmd, neg).
Term parse_term(std::string_view text, int n, bool positive_only = false);

struct RuleDiagnostics {
    bool expansive = false;
    bool negation_symmetric = true;
    std::vector<std::pair<std::string, bool>> commutation;  // perm name, Tp == pT
    std::vector<std::string> undefined;                     // right-hand tokens without a rule
    int extending_levels = 0;
    bool extending = false;
    std::vector<std::size_t> lengths;  // output length per level 0..extending_levels
};

RuleDiagnostics diagnose(const SubstitutionSystem& sys, int levels = 4);

}  // namespace fracseq
