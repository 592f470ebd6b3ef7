#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "radon/dataset.hpp"
#include "radon/linker.hpp"
#include "radon/relation.hpp"

namespace radon {

inline constexpr std::string_view kAsWkt = "http://www.opengis.net/ont/geosparql#asWKT";

enum class DataFormat { nt, tsv, csv };
enum class LinkFormat { nt, tsv };

DataFormat parse_data_format(std::string_view token);
LinkFormat parse_link_format(std::string_view token);

/// What happened to each input line.
struct LoadReport {
  std::size_t lines = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;     // malformed line or unusable geometry
  std::size_t skipped = 0;      // blank, comment, header or another predicate
  std::size_t duplicates = 0;   // later records for an id already loaded
  std::size_t crs_stripped = 0;
  std::vector<std::string> warnings;  // first kMaxWarnings only

  static constexpr std::size_t kMaxWarnings = 64;

  void warn(std::string message);
};

struct LoadedDataset {
  Dataset dataset;
  LoadReport report;
};

/// One `<subject> <predicate> "WKT"(^^<datatype>)? .` per line; only triples
/// whose predicate equals `predicate` are read. Throws Error(io) when the file
/// cannot be opened and Error(empty_dataset) when nothing usable was found.
LoadedDataset load_ntriples(const std::filesystem::path& path, std::string_view predicate = kAsWkt);
LoadedDataset load_ntriples(std::istream& in, std::string label, std::string_view predicate = kAsWkt);

/// `id<delim>WKT` per line. Fields may be double-quoted ("" escapes a quote);
/// an unquoted WKT runs to the end of the line. A leading `id,wkt` style
/// header is skipped.
LoadedDataset load_delimited(const std::filesystem::path& path, char delimiter);
LoadedDataset load_delimited(std::istream& in, std::string label, char delimiter);

LoadedDataset load_dataset(const std::filesystem::path& path, DataFormat format, std::string_view predicate = kAsWkt);

/// GeoSPARQL simple-features IRI for r (covers/coveredBy use the
/// Egenhofer terms, which have no simple-features counterpart).
std::string default_predicate(Relation r);

/// One line per link in lexicographic order. An empty predicate means
/// default_predicate(m.relation).
void write_links(const Mapping& m, std::ostream& out, LinkFormat format, std::string_view predicate = {});
void write_links(const Mapping& m, const std::filesystem::path& path, LinkFormat format,
                 std::string_view predicate = {});

/// Flat key/value view of the stats; the key order never changes.
std::vector<std::pair<std::string, std::string>> stats_fields(const RunStats& stats);

/// `key=value` lines in stats_fields order.
void write_stats(const RunStats& stats, std::ostream& out);
void write_stats(const RunStats& stats, const std::filesystem::path& path);

}  // namespace radon
