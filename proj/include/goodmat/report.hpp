#pragma once

// JSON reports and instance manifests.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "goodmat/pipeline.hpp"
#include "goodmat/rowfile.hpp"
#include "goodmat/satsearch.hpp"

namespace goodmat {

inline constexpr const char* kReportSchema = "goodmat.search-report/1";

inline nlohmann::json to_json(const SearchReport& r) {
  using nlohmann::json;
  return json{
      {"schema", kReportSchema},
      {"n", r.n},
      {"wall_seconds", r.wall_seconds},
      {"rowsum_triples", r.rowsum_triples},
      {"s_sk", r.s_sk},
      {"s_sy", r.s_sy},
      {"matched_quads", r.matched_quads},
      {"total_instances", r.total_instances},
      {"instance_count", r.instance_count},
      {"solutions_found", r.solutions_found},
      {"inequivalent", r.inequivalent},
      {"conflicts", r.conflicts},
      {"timings",
       {{"rowsums", r.timings.rowsums},
        {"candidates", r.timings.candidates},
        {"matching", r.timings.matching},
        {"dedup", r.timings.dedup},
        {"solving", r.timings.solving},
        {"canonicalize", r.timings.canonicalize}}},
      {"shard", {{"index", r.shard.index}, {"count", r.shard.count}}},
      {"exhaustive", r.exhaustive},
      {"filters",
       {{"candidate_psd", r.filters.candidate_psd},
        {"candidate_rowsum", r.filters.candidate_rowsum},
        {"pair_psd", r.filters.pair_psd},
        {"compressed_dedup", r.filters.compressed_dedup},
        {"parity_clauses", r.filters.parity_clauses},
        {"callback_prefix", r.filters.callback_prefix},
        {"epsilon", r.filters.epsilon}}},
      {"digest", r.digest},
  };
}

inline SearchReport report_from_json(const nlohmann::json& j) {
  if (j.value("schema", std::string{}) != kReportSchema) {
    throw InvalidInput("unsupported report schema");
  }
  SearchReport r;
  r.n = j.at("n").get<int>();
  r.wall_seconds = j.at("wall_seconds").get<double>();
  r.rowsum_triples = j.at("rowsum_triples").get<std::size_t>();
  r.s_sk = j.at("s_sk").get<std::size_t>();
  r.s_sy = j.at("s_sy").get<std::size_t>();
  r.matched_quads = j.at("matched_quads").get<std::size_t>();
  r.total_instances = j.at("total_instances").get<std::size_t>();
  r.instance_count = j.at("instance_count").get<std::size_t>();
  r.solutions_found = j.at("solutions_found").get<std::size_t>();
  r.inequivalent = j.at("inequivalent").get<std::size_t>();
  r.conflicts = j.at("conflicts").get<std::uint64_t>();
  const auto& t = j.at("timings");
  r.timings = {t.at("rowsums"), t.at("candidates"), t.at("matching"),
               t.at("dedup"), t.at("solving"), t.at("canonicalize")};
  r.shard = {j.at("shard").at("index").get<int>(), j.at("shard").at("count").get<int>()};
  r.exhaustive = j.at("exhaustive").get<bool>();
  const auto& f = j.at("filters");
  r.filters.candidate_psd = f.at("candidate_psd");
  r.filters.candidate_rowsum = f.at("candidate_rowsum");
  r.filters.pair_psd = f.at("pair_psd");
  r.filters.compressed_dedup = f.at("compressed_dedup");
  r.filters.parity_clauses = f.at("parity_clauses");
  r.filters.callback_prefix = f.at("callback_prefix");
  r.filters.epsilon = f.at("epsilon");
  r.digest = j.at("digest").get<std::string>();
  return r;
}

/// Tab-separated: instance id, compressed quadruple, variables, clauses.
inline void write_manifest(std::ostream& os, const std::vector<CnfInstance>& instances) {
  os << "# id\tcompressed\tvariables\tclauses\n";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    os << i << '\t' << format_compressed_quad(instances[i].source) << '\t' << instances[i].num_vars()
       << '\t' << instances[i].clauses.size() << '\n';
  }
}

}  // namespace goodmat
