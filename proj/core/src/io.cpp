#include "radon/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <unordered_set>

#include "radon/error.hpp"
#include "radon/wkt.hpp"

namespace radon {

namespace {

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c); });
  return out;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

/// Cursor over one N-Triples line. Every reader returns nullopt on a syntax
/// problem instead of throwing.
class TripleReader {
 public:
  explicit TripleReader(std::string_view line) : s_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }

  std::optional<std::string> term() {
    skip_ws();
    if (pos_ >= s_.size()) return std::nullopt;
    if (s_[pos_] == '<') return iri();
    if (s_.substr(pos_, 2) == "_:") {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && !is_space(s_[pos_])) ++pos_;
      if (pos_ - start <= 2) return std::nullopt;
      return std::string(s_.substr(start, pos_ - start));
    }
    return std::nullopt;
  }

  std::optional<std::string> iri() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '<') return std::nullopt;
    const std::size_t close = s_.find('>', pos_ + 1);
    if (close == std::string_view::npos || close == pos_ + 1) return std::nullopt;
    std::string_view body = s_.substr(pos_ + 1, close - pos_ - 1);
    if (std::any_of(body.begin(), body.end(), [](char c) { return is_space(c) || c == '<' || c == '"'; }))
      return std::nullopt;
    pos_ = close + 1;
    return std::string(body);
  }

  /// Quoted literal with an optional ^^<datatype> or @lang suffix.
  std::optional<std::string> literal() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '"') return std::nullopt;
    ++pos_;
    std::string out;
    for (;;) {
      if (pos_ >= s_.size()) return std::nullopt;
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= s_.size()) return std::nullopt;
      const char e = s_[pos_++];
      switch (e) {
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u':
        case 'U': {
          const std::size_t digits = e == 'u' ? 4 : 8;
          if (pos_ + digits > s_.size()) return std::nullopt;
          std::uint32_t cp = 0;
          const char* first = s_.data() + pos_;
          const auto [ptr, ec] = std::from_chars(first, first + digits, cp, 16);
          if (ec != std::errc() || ptr != first + digits || cp > 0x10FFFF) return std::nullopt;
          append_utf8(out, cp);
          pos_ += digits;
          break;
        }
        default: return std::nullopt;
      }
    }
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (!iri()) return std::nullopt;
    } else if (pos_ < s_.size() && s_[pos_] == '@') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
      if (pos_ == start) return std::nullopt;
    }
    return out;
  }

  /// Final " ." with an optional trailing comment.
  bool end() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '.') return false;
    ++pos_;
    skip_ws();
    return pos_ == s_.size() || s_[pos_] == '#';
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

/// Accumulates records in file order, keeping the first one per id.
class Collector {
 public:
  explicit Collector(LoadReport& report) : report_(report) {}

  void add(std::string id, std::string_view wkt, std::size_t line_no) {
    if (id.empty()) {
      reject(line_no, "empty id");
      return;
    }
    wkt = trim(wkt);
    if (!wkt.empty() && wkt.front() == '<') {
      const std::size_t close = wkt.find('>');
      if (close == std::string_view::npos) {
        reject(line_no, "unterminated CRS IRI");
        return;
      }
      ++report_.crs_stripped;
      report_.warn("line " + std::to_string(line_no) + ": ignoring CRS " + std::string(wkt.substr(0, close + 1)));
      wkt = trim(wkt.substr(close + 1));
    }
    if (seen_.contains(id)) {
      ++report_.duplicates;
      report_.warn("line " + std::to_string(line_no) + ": duplicate id " + id + ", keeping the first record");
      return;
    }
    try {
      features_.push_back(make_feature(id, parse_wkt(wkt)));
    } catch (const Error& e) {
      reject(line_no, e.what());
      return;
    }
    seen_.insert(std::move(id));
    ++report_.accepted;
  }

  void reject(std::size_t line_no, std::string_view why) {
    ++report_.rejected;
    report_.warn("line " + std::to_string(line_no) + ": " + std::string(why));
  }

  LoadedDataset finish(std::string label) {
    if (features_.empty())
      throw Error(ErrorCode::empty_dataset, "no usable records in " + label + " (" +
                                                std::to_string(report_.rejected) + " rejected)");
    return {Dataset(std::move(label), std::move(features_)), std::move(report_)};
  }

 private:
  LoadReport& report_;
  std::vector<Feature> features_;
  std::unordered_set<std::string> seen_;
};

bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  if (++line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  return true;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

/// Reads one possibly quoted field starting at `pos`. Returns nullopt on an
/// unterminated quote.
std::optional<std::string> quoted_field(std::string_view s, std::size_t& pos) {
  std::string out;
  ++pos;
  for (;;) {
    if (pos >= s.size()) return std::nullopt;
    const char c = s[pos++];
    if (c != '"') {
      out += c;
      continue;
    }
    if (pos < s.size() && s[pos] == '"') {
      out += '"';
      ++pos;
      continue;
    }
    return out;
  }
}

bool is_header(std::string_view id, std::string_view wkt) {
  const std::string a = lower(trim(id));
  const std::string b = lower(trim(wkt));
  return (a == "id" || a == "uri" || a == "iri") && (b == "wkt" || b == "geometry" || b == "geom");
}

std::string label_of(const std::filesystem::path& path) { return path.filename().string(); }

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

void LoadReport::warn(std::string message) {
  if (warnings.size() < kMaxWarnings) warnings.push_back(std::move(message));
}

DataFormat parse_data_format(std::string_view token) {
  if (token == "nt") return DataFormat::nt;
  if (token == "tsv") return DataFormat::tsv;
  if (token == "csv") return DataFormat::csv;
  throw Error(ErrorCode::invalid_config, "unknown input format '" + std::string(token) + "'");
}

LinkFormat parse_link_format(std::string_view token) {
  if (token == "nt") return LinkFormat::nt;
  if (token == "tsv") return LinkFormat::tsv;
  throw Error(ErrorCode::invalid_config, "unknown output format '" + std::string(token) + "'");
}

LoadedDataset load_ntriples(std::istream& in, std::string label, std::string_view predicate) {
  LoadReport report;
  Collector records(report);
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    ++report.lines;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
      ++report.skipped;
      continue;
    }
    TripleReader reader(body);
    const auto subject = reader.term();
    const auto pred = subject ? reader.iri() : std::nullopt;
    if (!pred) {
      records.reject(line_no, "malformed triple");
      continue;
    }
    if (*pred != predicate) {
      ++report.skipped;
      continue;
    }
    const auto object = reader.literal();
    if (!object || !reader.end()) {
      records.reject(line_no, "malformed triple");
      continue;
    }
    records.add(*subject, *object, line_no);
  }
  if (in.bad()) throw Error(ErrorCode::io, "read failed for " + label);
  return records.finish(std::move(label));
}

LoadedDataset load_ntriples(const std::filesystem::path& path, std::string_view predicate) {
  std::ifstream in = open_input(path);
  return load_ntriples(in, label_of(path), predicate);
}

LoadedDataset load_delimited(std::istream& in, std::string label, char delimiter) {
  LoadReport report;
  Collector records(report);
  std::string line;
  std::size_t line_no = 0;
  bool first_record = true;
  while (next_line(in, line, line_no)) {
    ++report.lines;
    std::string_view body = line;
    if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
    if (trim(body).empty() || trim(body).front() == '#') {
      ++report.skipped;
      continue;
    }

    std::size_t pos = 0;
    while (pos < body.size() && body[pos] == ' ') ++pos;
    std::optional<std::string> id;
    if (pos < body.size() && body[pos] == '"') {
      id = quoted_field(body, pos);
      while (pos < body.size() && body[pos] == ' ') ++pos;
    } else {
      const std::size_t cut = body.find(delimiter, pos);
      if (cut != std::string_view::npos) {
        id = std::string(trim(body.substr(pos, cut - pos)));
        pos = cut;
      }
    }
    if (!id || pos >= body.size() || body[pos] != delimiter) {
      records.reject(line_no, "expected id" + std::string(1, delimiter) + "wkt");
      continue;
    }
    ++pos;

    std::string_view rest = trim(body.substr(pos));
    std::string wkt;
    if (!rest.empty() && rest.front() == '"') {
      std::size_t q = 0;
      const auto field = quoted_field(rest, q);
      if (!field || !trim(rest.substr(q)).empty()) {
        records.reject(line_no, "bad quoted field");
        continue;
      }
      wkt = *field;
    } else {
      wkt = std::string(rest);
    }

    if (first_record && is_header(*id, wkt)) {
      ++report.skipped;
      first_record = false;
      continue;
    }
    first_record = false;
    records.add(*id, wkt, line_no);
  }
  if (in.bad()) throw Error(ErrorCode::io, "read failed for " + label);
  return records.finish(std::move(label));
}

LoadedDataset load_delimited(const std::filesystem::path& path, char delimiter) {
  std::ifstream in = open_input(path);
  return load_delimited(in, label_of(path), delimiter);
}

LoadedDataset load_dataset(const std::filesystem::path& path, DataFormat format, std::string_view predicate) {
  switch (format) {
    case DataFormat::nt: return load_ntriples(path, predicate);
    case DataFormat::tsv: return load_delimited(path, '\t');
    case DataFormat::csv: return load_delimited(path, ',');
  }
  throw Error(ErrorCode::invalid_config, "unknown input format");
}

std::string default_predicate(Relation r) {
  switch (r) {
    case Relation::equals: return "http://www.opengis.net/ont/geosparql#sfEquals";
    case Relation::intersects: return "http://www.opengis.net/ont/geosparql#sfIntersects";
    case Relation::touches: return "http://www.opengis.net/ont/geosparql#sfTouches";
    case Relation::crosses: return "http://www.opengis.net/ont/geosparql#sfCrosses";
    case Relation::overlaps: return "http://www.opengis.net/ont/geosparql#sfOverlaps";
    case Relation::within: return "http://www.opengis.net/ont/geosparql#sfWithin";
    case Relation::contains: return "http://www.opengis.net/ont/geosparql#sfContains";
    case Relation::disjoint: return "http://www.opengis.net/ont/geosparql#sfDisjoint";
    case Relation::covers: return "http://www.opengis.net/ont/geosparql#ehCovers";
    case Relation::covered_by: return "http://www.opengis.net/ont/geosparql#ehCoveredBy";
  }
  return {};
}

void write_links(const Mapping& m, std::ostream& out, LinkFormat format, std::string_view predicate) {
  const std::string pred = predicate.empty() ? default_predicate(m.relation) : std::string(predicate);
  std::vector<const Link*> order;
  order.reserve(m.links.size());
  for (const Link& l : m.links) order.push_back(&l);
  std::sort(order.begin(), order.end(), [](const Link* a, const Link* b) { return *a < *b; });

  auto node = [](const std::string& id) { return id.starts_with("_:") ? id : "<" + id + ">"; };
  for (const Link* l : order) {
    if (format == LinkFormat::nt)
      out << node(l->source) << " <" << pred << "> " << node(l->target) << " .\n";
    else
      out << l->source << '\t' << l->target << '\n';
  }
}

void write_links(const Mapping& m, const std::filesystem::path& path, LinkFormat format, std::string_view predicate) {
  std::ofstream out = open_output(path);
  write_links(m, out, format, predicate);
  finish_output(out, path);
}

std::vector<std::pair<std::string, std::string>> stats_fields(const RunStats& s) {
  auto n = [](std::uint64_t v) { return std::to_string(v); };
  return {
      {"source_size", n(s.source_size)},
      {"target_size", n(s.target_size)},
      {"swapped", s.swapped ? "1" : "0"},
      {"delta_lon", format_double(s.delta_lon)},
      {"delta_lat", format_double(s.delta_lat)},
      {"cells_total", n(s.cells_total)},
      {"cells_shared", n(s.cells_shared)},
      {"chunks", n(s.chunks)},
      {"workers", n(s.workers)},
      {"pair_encounters", n(s.pair_encounters)},
      {"cache_hits", n(s.cache_hits)},
      {"mbb_filtered", n(s.mbb_filtered)},
      {"full_computations", n(s.full_computations)},
      {"evaluation_failures", n(s.evaluation_failures)},
      {"links", n(s.links)},
      {"seconds_load", format_double(s.seconds_load)},
      {"seconds_swap", format_double(s.seconds_swap)},
      {"seconds_index", format_double(s.seconds_index)},
      {"seconds_link", format_double(s.seconds_link)},
      {"seconds_total", format_double(s.seconds_total)},
  };
}

void write_stats(const RunStats& stats, std::ostream& out) {
  for (const auto& [key, value] : stats_fields(stats)) out << key << '=' << value << '\n';
}

void write_stats(const RunStats& stats, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  write_stats(stats, out);
  finish_output(out, path);
}

}  // namespace radon
