#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace potkit::cli {

// Machine-readable run report: `key: value` lines followed by optional
// bracketed sections (tables as CSV lines). Identical inputs produce
// byte-identical text; the wall time therefore goes to the diagnostic stream,
// never into the report.
struct Report {
    std::string command;
    std::string status = "ok";  // ok | falsified | inconclusive | error
    std::vector<std::pair<std::string, std::string>> entries;
    struct Section {
        std::string name;
        std::vector<std::string> lines;
    };
    std::vector<Section> sections;
    double wall_ms = 0.0;

    void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
    void add_number(const std::string& key, double value);
    void add_count(const std::string& key, long value) { entries.emplace_back(key, std::to_string(value)); }
    Section& section(const std::string& name);

    int exit_code() const;
    std::string to_text() const;
};

std::string format_number(double value);  // %.17g

// Runs one subcommand; writes the report to `out` and diagnostics (wall time,
// usage errors) to `err`. Returns the process exit code (0 ok, 1 falsified,
// 2 inconclusive, 3 error/usage).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace potkit::cli
