#pragma once

#include <string>

#include <json.hpp>

#include "luinv/graphs.hpp"
#include "luinv/invariants.hpp"
#include "luinv/particle_spec.hpp"

namespace luinv {

/// Parses a comma-joined particle list: "b3" (boson, 3 particles), "f4"
/// (fermion), "p2,1" (general partition; bare numbers continue it), with an
/// optional "+mixed" suffix appending (1). Throws ParseError.
ParticleSpec parse_spec(const std::string& text);

/// Inverse of parse_spec: rows print as b, columns of length >= 2 as f,
/// everything else as p. (1) prints as "b1".
std::string format_spec(const ParticleSpec& spec);

/// {spec, dims, entries: [{index: [...], re, im}]} with 0-based indices.
/// Missing entries are zero; the result is symmetrized. Throws ParseError.
StateTensor state_from_json(const nlohmann::json& j);
/// Writes every nonzero coefficient, so loading returns the same state.
nlohmann::json state_to_json(const StateTensor& psi);

/// {spec, dims, entries: [{row: [...], col: [...], re, im}]}, 0-based.
/// Projected, made Hermitian and trace-normalized on load.
DensityTensor density_from_json(const nlohmann::json& j);
nlohmann::json density_to_json(const DensityTensor& rho);

/// {graph_id, value_re, value_im}.
nlohmann::json evaluation_record(const GraphClass& g, Complex value);

}  // namespace luinv
