#ifndef AINFTY_REPORT_HPP
#define AINFTY_REPORT_HPP

#include "ainfty/complex.hpp"

#include <string>
#include <vector>

namespace ainfty {

inline const char* tool_version() { return "0.3.0"; }

// 64-bit FNV-1a digest, rendered as hex; stable across runs
std::string fnv1a_hex(const std::string& bytes);
std::string file_digest(const std::string& path);

struct ReportTable {
    std::string name;
    BettiTable lhs;
    BettiTable rhs;
    bool compare = true; // when false, only lhs is rendered
    std::string certificate;
};

struct ReportCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs; // (path, digest)
    std::vector<ReportCheck> checks;
    std::vector<ReportTable> tables;
    std::vector<std::pair<std::string, std::string>> params; // echoed config
    bool pass = true;
    std::string fail_reason;

    void add_input(const std::string& path);
};

/* Machine rendering: versioned, key-ordered JSON; byte-identical across runs
 * on identical inputs and configuration. Human rendering shows the same data
 * as aligned tables. */
std::string render_machine(const Report& r);
std::string render_human(const Report& r);

} // namespace ainfty

#endif
