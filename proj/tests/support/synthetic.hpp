#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mktcx/ingest.hpp"

namespace mktcx::testing {

/// Fractional Gaussian noise of length n with Hurst exponent `hurst`, unit
/// variance, by circulant embedding (Davies-Harte).
Eigen::VectorXd fractional_gaussian_noise(Eigen::Index n, double hurst, std::mt19937_64& rng);

/// Fractional Brownian motion X_0 = 0, ..., X_n.
Eigen::VectorXd fractional_brownian_motion(Eigen::Index n, double hurst, std::mt19937_64& rng);

/// Symmetric walk with N(0, 1) increments, X_0 = 0, ..., X_n.
Eigen::VectorXd gaussian_walk(Eigen::Index n, std::mt19937_64& rng);

/// Symmetric walk with +/-1 increments.
Eigen::VectorXd lattice_walk(Eigen::Index n, std::mt19937_64& rng);

/// Daily series starting 2010-01-01 with the given prices.
PriceSeries daily_series(const std::string& id, MarketKind kind, const Eigen::VectorXd& prices,
                         int start_year = 2010);

/// Twelve synthetic markets: 2 crypto, 2 metals, 3 FX,
/// 5 stock indices. FX-like markets are smooth low-volatility paths
/// (persistent increments); the rest are geometric random walks.
std::vector<PriceSeries> twelve_market_fixture(std::uint64_t seed = 20140701,
                                               Eigen::Index days = 1500);

/// Writes each series as <dir>/<id>.csv and a config file referencing them.
/// Returns the config path.
std::filesystem::path write_fixture(const std::vector<PriceSeries>& markets,
                                    const std::filesystem::path& dir,
                                    const std::string& extra_config = "");

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace mktcx::testing
