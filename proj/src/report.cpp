#include "ainfty/report.hpp"
#include "ainfty/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace ainfty {

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string file_digest(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrKind::Parse, "cannot open '" + path + "' for digest");
    std::ostringstream ss;
    ss << f.rdbuf();
    return fnv1a_hex(ss.str());
}

void Report::add_input(const std::string& path) { inputs.push_back({path, file_digest(path)}); }

namespace {

nlohmann::ordered_json table_json(const BettiTable& t) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& [d, n] : t) {
        if (n == 0)
            continue;
        j.push_back({{"c", d.c}, {"a", d.a}, {"dim", n}});
    }
    return j;
}

} // namespace

std::string render_machine(const Report& r) {
    nlohmann::ordered_json j;
    j["schema"] = "ainfty-report/1";
    j["version"] = tool_version();
    j["command"] = r.command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& [p, d] : r.inputs)
        inputs.push_back({{"path", p}, {"digest", d}});
    j["inputs"] = inputs;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params)
        params[k] = v;
    j["params"] = params;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (!c.detail.empty())
            cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    nlohmann::ordered_json tables = nlohmann::ordered_json::array();
    for (const auto& t : r.tables) {
        nlohmann::ordered_json tj;
        tj["name"] = t.name;
        tj["betti"] = table_json(t.lhs);
        if (t.compare)
            tj["expected"] = table_json(t.rhs);
        if (!t.certificate.empty())
            tj["certificate"] = t.certificate;
        tables.push_back(tj);
    }
    j["tables"] = tables;
    j["pass"] = r.pass;
    if (!r.fail_reason.empty())
        j["fail_reason"] = r.fail_reason;
    return j.dump(2) + "\n";
}

namespace {

void render_table(std::ostream& os, const BettiTable& t) {
    if (t.empty()) {
        os << "    (empty)\n";
        return;
    }
    int amin = t.begin()->first.a, amax = amin, cmin = t.begin()->first.c, cmax = cmin;
    for (const auto& [d, n] : t) {
        amin = std::min(amin, d.a);
        amax = std::max(amax, d.a);
        cmin = std::min(cmin, d.c);
        cmax = std::max(cmax, d.c);
    }
    os << "    a\\c ";
    for (int c = cmin; c <= cmax; ++c)
        os << std::setw(4) << c;
    os << "\n";
    for (int a = amax; a >= amin; --a) {
        os << "    " << std::setw(3) << a << " ";
        for (int c = cmin; c <= cmax; ++c) {
            auto it = t.find({c, a});
            int v = it == t.end() ? 0 : it->second;
            if (v == 0)
                os << "   .";
            else
                os << std::setw(4) << v;
        }
        os << "\n";
    }
}

} // namespace

std::string render_human(const Report& r) {
    std::ostringstream os;
    os << "ainfty " << tool_version() << " :: " << r.command << "\n";
    for (const auto& [p, d] : r.inputs)
        os << "input " << p << " (fnv64 " << d << ")\n";
    for (const auto& [k, v] : r.params)
        os << "param " << k << " = " << v << "\n";
    if (!r.checks.empty())
        os << "checks:\n";
    for (const auto& c : r.checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
        if (!c.detail.empty())
            os << " -- " << c.detail;
        os << "\n";
    }
    for (const auto& t : r.tables) {
        os << "table: " << t.name;
        if (!t.certificate.empty())
            os << "  [" << t.certificate << "]";
        os << "\n";
        render_table(os, t.lhs);
        if (t.compare) {
            os << "  expected:\n";
            render_table(os, t.rhs);
        }
    }
    os << (r.pass ? "RESULT PASS" : "RESULT FAIL");
    if (!r.pass && !r.fail_reason.empty())
        os << " (" << r.fail_reason << ")";
    os << "\n";
    return os.str();
}

} // namespace ainfty
