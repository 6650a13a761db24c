#pragma once

#include "approxc1/assembly.hpp"
#include "approxc1/norms.hpp"
#include "approxc1/topology.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace approxc1 {

struct ExperimentConfig {
    /// Builtin fixture name or path to a geometry JSON file.
    std::string geometry = "square-6-bilinear";
    Method method = Method::ApproxC1;
    int p = 3;
    /// Negative means p - 1.
    int r = -1;
    std::vector<int> levels{4, 8, 16, 32};
    /// Unset picks the fixture default.
    std::optional<BcType> bc;
    double eta_mult = 4.0;
    /// Elements per direction of the mesh where c(h0) is computed.
    int n0 = 16;
    bool parallel = true;

    int regularity() const { return r < 0 ? p - 1 : r; }
    void validate() const;
};

struct LevelResult {
    int n = 0;
    ErrorReport errors;
    std::vector<double> eta;
    bool ok = true;
    std::string status = "ok";
};

struct ConvergenceTable {
    std::vector<LevelResult> rows;
    std::size_t interfaces = 0;
};

struct SweepRow {
    double factor = 1.0;
    LevelResult result;
};

/// Geometry of the config with its topology.
std::shared_ptr<const Topology> load_topology(const ExperimentConfig& cfg);

/// Problem with the cosine solution; homogeneous essential data.
Problem cosine_problem();

/// One level; eta (Nitsche only) defaults to eta_mult * c(h0) / h0.
LevelResult solve_level(const ExperimentConfig& cfg, std::shared_ptr<const Topology> topo, int n,
                        const std::vector<double>* eta = nullptr);

ConvergenceTable run_convergence(const ExperimentConfig& cfg);

/// Nitsche at n0 with a single eta = factor * max_i eta_i on every interface.
std::vector<SweepRow> run_eta_sweep(const ExperimentConfig& cfg, const std::vector<double>& factors);

/// log2(coarse / fine).
double observed_rate(double coarse, double fine);
/// Least-squares slope of log(e) against log(h).
double fitted_rate(const std::vector<double>& h, const std::vector<double>& e);

std::string convergence_csv(const ConvergenceTable& table);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string jump_csv(const ConvergenceTable& table);

} // namespace approxc1
