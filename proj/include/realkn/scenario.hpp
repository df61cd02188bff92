#pragma once

// Scenario files: UTF-8 JSON with a "kind" and one section per data family.
//
//   {
//     "kind": "monodromy" | "local_model" | "complex",
//     "name": "...",                      optional
//     "monodromy": {
//       "rank": 2, "partial": false, "base_euler": 2,
//       "generators": [{"name": "g1", "T": [[1,0],[1,1]], "lambda": [0,0], "theta": [0,0]}],
//       "relations": [["g1", "g2^-1"]],
//       "branch_points": ["g1"]
//     },
//     "complex": {
//       "dimension": 2,
//       "cells": [[[], ...], [[0,1], ...], [[0,1,3], ...]],   boundary ids per dimension
//       "vertex_fans": [{"vertex": 0, "rays": [{"edge": 0, "ray": [1,0]}]}],
//       "kinks": [1, ...],
//       "singular_points": [{"edge": 0, "ordinal": 0, "direction": [1,0],
//                            "conormal": [0,-1], "slab_sign_change": true}]
//     },
//     "local_model": {
//       "mprime_rank": 1, "fan": [[[-1]], [[1]]], "polytopes": [[[0],[1]], [[0],[1]]],
//       "bound": 4, "face": [[0,1,0]]                        face optional
//     }
//   }
//
// "T" may also be a flat row-major list of n*n integers. "lambda" and "theta"
// default to zero vectors. The section named by "kind" is required; the
// others are optional.

#include <optional>
#include <string>
#include <vector>

#include "realkn/affine_complex.hpp"
#include "realkn/monodromy.hpp"
#include "realkn/toric_monoid.hpp"

namespace realkn {

enum class ScenarioKind { Monodromy, LocalModel, Complex };

std::string to_string(ScenarioKind k);

struct MonodromySection {
  AffineMonodromyRep rep;
  std::vector<std::string> branch_points;
  Int base_euler = 2;

  friend bool operator==(const MonodromySection&, const MonodromySection&) = default;
};

struct ComplexSection {
  PolyhedralComplex complex;
  MPLFunction mpl;
  std::vector<SingularPointSpec> singular_points;

  friend bool operator==(const ComplexSection&, const ComplexSection&) = default;
};

struct LocalModelSection {
  LocalModelSpec spec;
  Int bound = 4;
  // Generators of the face F for ghost-rank bookkeeping. Absent means the
  // smallest face containing e_0.
  std::optional<std::vector<IntVector>> face;

  friend bool operator==(const LocalModelSection&, const LocalModelSection&) = default;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::Monodromy;
  std::string name;
  std::optional<MonodromySection> monodromy;
  std::optional<ComplexSection> complex;
  std::optional<LocalModelSection> local_model;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Throws Error(InvalidInput) on schema violations; errors raised by the
// domain constructors (UnknownGenerator, RankMismatch, ...) pass through.
Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);

// "example:<name>" selects a builtin; anything else is a file path.
Scenario load_scenario(const std::string& source);

std::vector<std::string> builtin_names();
// Throws InvalidInput for an unknown name.
Scenario builtin_scenario(const std::string& name);

}  // namespace realkn
