#pragma once

#include <string>
#include <vector>

#include "conedyn/conefield.hpp"
#include "conedyn/flow.hpp"

namespace conedyn::systems {

// dx/dt = -x + tanh(A x), A = [[2, 0.5], [0.5, 2]].
flow::FlowSystem coop2d();
// dx/dt = -x + tanh(2 x).
flow::FlowSystem bistable1d();
// dx/dt = A x with A = [[-1, 2], [0, -1]].
flow::FlowSystem metzler_linear();
// dx/dt = A x with A = [[0, 1], [-1, 0]].
flow::FlowSystem rotation2d();
// dP/dt = A P + P A^T on SPD(2), A = [[-1, 0.2], [0, -1]].
flow::FlowSystem spd_lyapunov();

// Any constant-coefficient system dx/dt = A x on R^n.
flow::FlowSystem linear(const Mat& a, std::string name = "linear");
// f == 0 on R^n.
flow::FlowSystem zero(int n);

struct RegistryEntry {
  std::string key;
  std::string description;
  // Default field spec key for the CLI (e.g. "orthant", "homogeneous_spd").
  std::string default_field;
};

const std::vector<RegistryEntry>& registry();

// Throws InvalidArgument for unknown keys.
flow::FlowSystem make(const std::string& key);

// The default cone field for a registry system.
conefield::ConeField default_field(const flow::FlowSystem& s);

}  // namespace conedyn::systems
