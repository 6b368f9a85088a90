#pragma once

// The acceptance suite, shared by the ctest driver and `jordanforge selftest`.

#include "jordanforge/specfact.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace jforge::acceptance {

struct SuiteConfig {
    std::uint64_t seed = 20240611;
    int threads = 1;
    /// Per-instance JSON results go here; empty means a fresh temporary directory.
    std::string output_dir;
    /// Item 11 reruns items 1-10 with another thread count and compares files.
    bool check_determinism = true;
    SpecfactOptions options;
    std::uint64_t kappa_constant = 8;
    /// Progress messages (one per finished item); may be empty.
    std::function<void(const std::string&)> progress;
};

struct ItemResult {
    int id = 0;
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
    /// Worst observed value and its tolerance, both as log2, when meaningful.
    std::string measured;
    std::string tolerance;
    std::vector<std::string> failures;
    bool pass() const { return total > 0 && passed == total; }
};

struct SuiteReport {
    std::vector<ItemResult> items;
    bool all_pass() const;
};

SuiteReport run_suite(const SuiteConfig& cfg);

/// "PASS  3 root finder vs oracle  30/30  worst -71.2 <= -64.0"
std::string format_line(const ItemResult& r);
std::string format_report(const SuiteReport& r);

}  // namespace jforge::acceptance
