#pragma once

#include <string>
#include <vector>

namespace bott {

struct CheckRow {
    std::string suite;
    std::string anchor;    // the statement being certified
    std::string instance;  // what it was checked on
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<CheckRow> rows;

    void add(std::string suite, std::string anchor, std::string instance, bool pass, std::string detail = "") {
        rows.push_back({std::move(suite), std::move(anchor), std::move(instance), pass, std::move(detail)});
    }
    void append(const Report& r) { rows.insert(rows.end(), r.rows.begin(), r.rows.end()); }
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.pass ? 0 : 1;
        return n;
    }
};

}  // namespace bott
