#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "radon/dataset.hpp"
#include "radon/geometry.hpp"

namespace radon {

/// Clustered random corpus. Two corpora built with the same layout_seed (and
/// the same clusters, window and feature_size) share cluster centres, the
/// tile lattice and the pool that duplicates are drawn from, so they produce
/// equal, touching and nested pairs across datasets.
struct SyntheticCorpusSpec {
  std::size_t polygons = 0;    // star-shaped
  std::size_t holed = 0;       // star with a star-shaped hole
  std::size_t lines = 0;
  std::size_t points = 0;      // some sit on tile corners and edges
  std::size_t tiles = 0;       // lattice rectangles; neighbours share edges
  std::size_t duplicates = 0;  // exact copies from the shared pool
  std::size_t crossers = 0;    // polygons and lines straddling lon = +-180

  std::size_t clusters = 1;
  double spread = 3.0;         // cluster radius, degrees
  double feature_size = 1.0;   // typical feature extent, degrees
  MBB window{-170.0, -60.0, 170.0, 60.0};

  std::uint64_t layout_seed = 1;
  std::uint64_t seed = 1;
  std::string id_prefix = "f";

  std::size_t total() const noexcept {
    return polygons + holed + lines + points + tiles + duplicates + crossers;
  }

  /// Throws Error(invalid_config) for an empty window, a window outside the
  /// valid coordinate range, zero clusters or non-positive sizes.
  void validate() const;

  /// `count` features split across every kind, with ceil(fraction * count)
  /// antimeridian crossers.
  static SyntheticCorpusSpec mixed(std::size_t count, std::size_t clusters, double antimeridian_fraction,
                                   std::uint64_t layout_seed, std::uint64_t seed, std::string id_prefix);
};

/// Coordinates are multiples of 1/1024 degree. Deterministic for a given spec.
std::vector<std::pair<std::string, Geometry>> generate_corpus(const SyntheticCorpusSpec& spec);

Dataset generate_dataset(std::string label, const SyntheticCorpusSpec& spec);

}  // namespace radon
