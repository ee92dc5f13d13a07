//  Copyright 2026 The Ambiguity Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef AMBIGUITY_DEFAULTS_HPP_
#define AMBIGUITY_DEFAULTS_HPP_

#include <cstddef>

namespace ambiguity::defaults {

// Per-setting normalization tolerance for probability tables. Inputs outside
// this band are rejected, never renormalized.
inline constexpr double eps_norm = 1e-9;

// Two outcome distributions closer than this (uniform distance) count as the
// same row when partitioning a knob domain.
inline constexpr double eps_eq = 1e-9;

// Minimum-eigenvalue slack accepted for positive semidefiniteness.
inline constexpr double eps_psd = 1e-9;

// Unit-trace tolerance for density operators.
inline constexpr double trace_tol = 1e-9;

// Entrywise tolerance for POVM completeness (sum of detection operators
// equals the identity).
inline constexpr double completeness_tol = 1e-9;

// Gap in trace distance above which two extended statements of results count
// as conflicting.
inline constexpr double tol_conflict = 1e-6;

// Slack used when checking the distance bound lhs <= rhs.
inline constexpr double bound_slack = 1e-9;

// Default tolerance for checking that an explanation reproduces a table.
inline constexpr double verify_tol = 1e-9;

// Largest atom count for which event suprema are enumerated exhaustively
// (2^n events); beyond this a labeled heuristic is used.
inline constexpr std::size_t exhaustive_event_limit = 12;

// Default cap on |settings| of the expanded knob domain in iterated cycles.
inline constexpr std::size_t max_extended_settings = 4096;

// Hard cap on enumerable settings/atoms of any single domain.
inline constexpr std::size_t max_enumeration = 1u << 24;

}  // namespace ambiguity::defaults

#endif  // AMBIGUITY_DEFAULTS_HPP_
