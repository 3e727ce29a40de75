#pragma once

#include "banach_ortho/serialization.hpp"

namespace bjo::cli {

inline constexpr const char* kVersion = "0.1.0";

// Runs one problem file. The returned report has a deterministic "payload"
// section (bit-for-bit reproducible for a fixed problem, including its seed)
// and a "meta" section for timing. Throws DomainError for schema violations,
// CapabilityError / DiagnosticError as produced by the operations.
json run_problem(const json& problem);

struct SuiteOptions {
  // Test fixture: when positive, the invariants suite runs one check with
  // this (deliberately wrong) tolerance so the failure path is exercised and
  // the emitted failing instance can be replayed.
  double inject_bug_tolerance = 0.0;
};

// Runs a named property suite ("paper-equivalences" or "invariants") and
// returns a summary report with pass/fail counts per check and the first
// failing instance as a replayable problem.
json run_suite(const std::string& name, std::uint64_t seed, const SuiteOptions& opts = {});

const std::vector<std::string>& known_kinds();
const std::vector<std::string>& known_suites();

}  // namespace bjo::cli
