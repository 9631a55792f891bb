#pragma once

#include "oblique/config.hpp"
#include "oblique/exact_models.hpp"
#include "oblique/perturbation.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace oblique {

/// 17 significant digits, '.' decimal point.
std::string format_double(double v);

SurfaceMesh build_mesh(const RunConfig& cfg);

/// Reads `phi,theta,h_re,h_im` samples (header line and `#` comments allowed).
struct HSample {
  double phi = 0.0;
  double theta = 0.0;
  complex h{};
};
std::vector<HSample> load_h_samples(const std::filesystem::path& path);

/// Boundary data from a sampled h: least-squares fit over all harmonics with
/// degree <= lmax, evaluated as a surface expansion.
BoundaryData h_from_samples(const std::vector<HSample>& samples, int lmax);

BoundaryData build_h(const RunConfig& cfg);

/// Reference potential for error columns: the exact model, or the bare
/// monopole 1/r for external data (so errors are then the total correction).
using ReferencePotential = std::function<complex(const SphericalPoint&)>;
ReferencePotential build_reference(const RunConfig& cfg);

/// node,phi,theta,v_exact_re,v_exact_im,e1_re,e1_im,e2_re,e2_im,e3_re,e3_im
/// with e_k = v_ref - v_k; columns for orders above the solution are `nan`.
void emit_error_table(const PerturbationSolution& sol, const ReferencePotential& ref, std::ostream& out);

/// node,x,y,z,gx_re,gy_re,gz_re,gx_im,gy_im,gz_im from the expansion gradient.
void emit_field_csv(const PerturbationSolution& sol, std::ostream& out);

struct SweepRow {
  double r = 0.0;
  complex error{};
};

/// |v_ref - v_n| at the probe direction moved to each radius.
std::vector<SweepRow> radius_sweep(const PerturbationSolution& sol, const ReferencePotential& ref,
                                   const std::vector<double>& radii, int probe_node);
void emit_radius_sweep(const PerturbationSolution& sol, const ReferencePotential& ref, const RunConfig& cfg,
                       std::ostream& out);

/// Largest |v_ref - v_order| over the mesh nodes.
double max_node_error(const PerturbationSolution& sol, const ReferencePotential& ref, int order);

struct RunSummary {
  double max_error = 0.0;
  int order = 0;
  std::size_t nodes = 0;
  std::vector<std::filesystem::path> files;
};

/// Full pipeline: mesh, cascade, requested reports and run_metadata.txt in
/// cfg.out_dir.
RunSummary run(const RunConfig& cfg);

} // namespace oblique
