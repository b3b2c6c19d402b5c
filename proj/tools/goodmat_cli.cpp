// Command-line front end for the enumeration pipeline.
//
// Exit status: 0 success, 1 verification failure or incomplete search,
// 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "goodmat/oracle.hpp"
#include "goodmat/pipeline.hpp"
#include "goodmat/report.hpp"
#include "goodmat/rowfile.hpp"
#include "goodmat/verify.hpp"

namespace fs = std::filesystem;
using namespace goodmat;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string out;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool no_filters = false;
  bool allow_large = false;
  std::uint64_t max_conflicts = 0;
};

PipelineOptions pipeline_options(const Common& c) {
  PipelineOptions o;
  if (c.no_filters) o.filters = FilterOptions::none();
  o.threads = c.threads;
  o.seed = c.seed;
  o.allow_large = c.allow_large;
  o.max_conflicts_per_instance = c.max_conflicts;
  return o;
}

fs::path out_dir(const Common& c) {
  fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(dir);
  return dir;
}

Shard parse_shard(const std::string& text) {
  static const std::regex pattern(R"((\d+)/(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw InvalidInput("shard must look like i/N");
  Shard s{std::stoi(m[1]), std::stoi(m[2])};
  if (s.count < 1 || s.index < 0 || s.index >= s.count) throw InvalidInput("shard index must satisfy 0 <= i < N");
  return s;
}

std::vector<DefiningQuad> plain(const std::vector<CanonicalQuad>& qs) {
  std::vector<DefiningQuad> out;
  for (const auto& q : qs) out.push_back(q.quad);
  return out;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream os(path);
  if (!os) throw InvalidInput("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

void print_summary(const SearchReport& r) {
  std::cout << "order: " << r.n << '\n'
            << "rowsum triples: " << r.rowsum_triples << '\n'
            << "candidates: s_sk " << r.s_sk << ", s_sy " << r.s_sy << '\n'
            << "compressed quadruples: " << r.matched_quads << '\n'
            << "instances: " << r.instance_count << " of " << r.total_instances << '\n'
            << "solutions: " << r.solutions_found << '\n'
            << "inequivalent: " << r.inequivalent << '\n'
            << "wall seconds: " << r.wall_seconds << '\n'
            << "digest: " << r.digest << '\n';
}

// Writes rows and report; returns the exit status.
int run_search(int n, const Common& c, const Shard& shard, const std::string& stem) {
  auto opts = pipeline_options(c);
  opts.shard = shard;
  const auto dir = out_dir(c);
  auto finish = [&](const EnumerationResult& r) {
    write_quads_file((dir / (stem + ".rows")).string(), plain(r.quads));
    write_json(dir / (stem + ".json"), to_json(r.report));
    print_summary(r.report);
  };
  try {
    finish(enumerate_good_matrices(n, opts));
    return 0;
  } catch (const IncompleteSearch& e) {
    finish(e.partial());
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_rowsums(int n) {
  for (const auto& t : signed_rowsums(n)) std::cout << t.x << ' ' << t.y << ' ' << t.z << '\n';
  return 0;
}

int cmd_candidates(int n, const Common& c) {
  check_order(n, c.allow_large);
  const auto opts = pipeline_options(c);
  const auto cands = generate_candidates(n, signed_rowsums(n), opts.filters);
  std::cout << "s_sk: " << cands.s_sk.size() << "\ns_sy: " << cands.s_sy.size() << '\n';
  if (!c.out.empty()) {
    const auto dir = out_dir(c);
    std::ofstream sk(dir / ("s_sk-" + std::to_string(n) + ".csv")), sy(dir / ("s_sy-" + std::to_string(n) + ".csv"));
    write_compressed_rows(sk, cands.s_sk);
    write_compressed_rows(sy, cands.s_sy);
  }
  return 0;
}

int cmd_match(int n, const Common& c, const std::string& dimacs_dir) {
  SearchReport report;
  const auto opts = pipeline_options(c);
  const auto instances = prepare_instances(n, opts, report);
  std::cout << "compressed quadruples: " << report.matched_quads << "\ninstances: " << instances.size() << '\n';
  if (!c.out.empty()) {
    std::ofstream os(out_dir(c) / ("instances-" + std::to_string(n) + ".txt"));
    for (const auto& q : instances) os << format_compressed_quad(q) << '\n';
  }
  if (!dimacs_dir.empty()) {
    fs::create_directories(dimacs_dir);
    std::vector<CnfInstance> cnfs;
    for (const auto& q : instances) {
      try {
        cnfs.push_back(build_instance(q, opts.filters));
      } catch (const InfeasibleInstance&) {
        // Nothing to export.
      }
    }
    for (std::size_t i = 0; i < cnfs.size(); ++i) {
      std::ofstream os(fs::path(dimacs_dir) / ("instance-" + std::to_string(i) + ".cnf"));
      os << export_dimacs(cnfs[i]);
    }
    std::ofstream manifest(fs::path(dimacs_dir) / "manifest.tsv");
    write_manifest(manifest, cnfs);
    std::cout << "exported: " << cnfs.size() << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& path) {
  const auto quads = read_quads_file(path);
  if (quads.empty()) throw InvalidInput("row file holds no quads");
  bool all = true;
  for (std::size_t i = 0; i < quads.size(); ++i) {
    const auto& q = quads[i];
    const bool def = verify_definition(q), paf = paf_certificate(q), prod = satisfies_product_theorem(q);
    bool amicable = false;
    if (def) {
      try {
        amicable = is_good_family(recover_amicable(q));
      } catch (const ConstructionError&) {
      }
    }
    const bool ok = def && paf && prod && amicable;
    all = all && ok;
    std::cout << "quad " << i << " (n=" << q.order() << "): definition " << (def ? "ok" : "FAIL") << ", paf "
              << (paf ? "ok" : "FAIL") << ", product " << (prod ? "ok" : "FAIL") << ", amicable "
              << (amicable ? "ok" : "FAIL") << '\n';
  }
  std::cout << (all ? "verified" : "verification failed") << '\n';
  return all ? 0 : kExitFailure;
}

int cmd_hadamard(const std::string& path, const Common& c) {
  const auto quads = read_quads_file(path);
  if (quads.empty()) throw InvalidInput("row file holds no quads");
  for (std::size_t i = 0; i < quads.size(); ++i) {
    if (!verify_definition(quads[i])) {
      std::cout << "quad " << i << ": not a good-matrix quad\n";
      return kExitFailure;
    }
    const auto h = build_skew_hadamard(quads[i]);
    std::cout << "quad " << i << ": skew Hadamard matrix of order " << h.rows() << " verified\n";
    if (!c.out.empty()) {
      std::ofstream os(out_dir(c) / ("hadamard-" + std::to_string(h.rows()) + "-" + std::to_string(i) + ".txt"));
      for (std::size_t r = 0; r < h.rows(); ++r) {
        for (std::size_t col = 0; col < h.cols(); ++col) os << (h(r, col) == 1 ? '+' : '-');
        os << '\n';
      }
    }
  }
  return 0;
}

int cmd_oracle(int n, const Common& c) {
  const auto quads = brute_force_oracle(n);
  std::cout << "inequivalent: " << quads.size() << '\n';
  if (!c.out.empty()) write_quads_file((out_dir(c) / ("oracle-" + std::to_string(n) + ".rows")).string(), plain(quads));
  return 0;
}

// Merges shard outputs found in `dir` (pairs of shard-*.json and .rows).
int cmd_report(const std::string& dir) {
  if (!fs::is_directory(dir)) throw InvalidInput("not a directory: " + dir);
  struct Group {
    int count = 0;
    std::map<int, SearchReport> reports;
    std::vector<std::vector<CanonicalQuad>> parts;
  };
  std::map<int, Group> groups;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream is(path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception&) {
      continue;
    }
    if (!j.is_object() || j.value("schema", std::string{}) != kReportSchema) continue;
    const auto r = report_from_json(j);
    auto rows_path = path;
    rows_path.replace_extension(".rows");
    std::vector<CanonicalQuad> part;
    for (const auto& q : read_quads_file(rows_path.string())) part.push_back(canonical_form(q));
    auto& g = groups[r.n];
    if (g.count && g.count != r.shard.count) throw InvalidInput("mixed shard counts for one order");
    g.count = r.shard.count;
    g.reports[r.shard.index] = r;
    g.parts.push_back(std::move(part));
  }
  if (groups.empty()) throw InvalidInput("no reports in " + dir);
  bool complete = true;
  for (const auto& [n, g] : groups) {
    const auto merged = merge_shards(g.parts);
    bool exhaustive = static_cast<int>(g.reports.size()) == g.count;
    std::size_t instances = 0;
    double seconds = 0;
    for (const auto& [i, r] : g.reports) {
      exhaustive = exhaustive && r.exhaustive;
      instances += r.instance_count;
      seconds += r.wall_seconds;
    }
    complete = complete && exhaustive;
    std::cout << "order " << n << ": shards " << g.reports.size() << "/" << g.count << ", instances " << instances
              << ", shard seconds " << seconds << ", inequivalent: " << merged.size()
              << (exhaustive ? "" : " (incomplete)") << ", digest " << quads_digest(merged) << '\n';
  }
  return complete ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate and certify circulant good matrices"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output directory");
    sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
    sub->add_option("--seed", common.seed, "Solver seed (0 = deterministic default)");
    sub->add_flag("--no-filters", common.no_filters, "Disable every pipeline filter");
    sub->add_flag("--allow-large", common.allow_large, "Permit orders above 39");
    sub->add_option("--max-conflicts", common.max_conflicts, "Per-instance conflict limit (0 = none)");
  };

  int n = 0;
  std::string path, shard_text = "0/1", dimacs_dir;

  auto* rowsums = app.add_subcommand("rowsums", "Signed rowsum triples");
  rowsums->add_option("n", n, "Order")->required();
  auto* candidates = app.add_subcommand("candidates", "Candidate compressed rows");
  candidates->add_option("n", n, "Order")->required();
  add_common(candidates);
  auto* match = app.add_subcommand("match", "Compressed quadruples and SAT instances");
  match->add_option("n", n, "Order")->required();
  match->add_option("--dimacs", dimacs_dir, "Export DIMACS files and a manifest here");
  add_common(match);
  auto* solve = app.add_subcommand("solve", "Solve one shard of the instances");
  solve->add_option("n", n, "Order")->required();
  solve->add_option("--shard", shard_text, "Shard i/N");
  add_common(solve);
  auto* enumerate = app.add_subcommand("enumerate", "Full enumeration");
  enumerate->add_option("n", n, "Order")->required();
  add_common(enumerate);
  auto* verify = app.add_subcommand("verify", "Check every quad in a row file");
  verify->add_option("rowfile", path, "Row file")->required();
  auto* hadamard = app.add_subcommand("hadamard", "Build skew Hadamard matrices from a row file");
  hadamard->add_option("rowfile", path, "Row file")->required();
  add_common(hadamard);
  auto* oracle = app.add_subcommand("oracle", "Brute-force enumeration (n <= 15)");
  oracle->add_option("n", n, "Order")->required();
  add_common(oracle);
  auto* report = app.add_subcommand("report", "Merge shard reports in a directory");
  report->add_option("dir", path, "Directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*rowsums) return cmd_rowsums(n);
    if (*candidates) return cmd_candidates(n, common);
    if (*match) return cmd_match(n, common, dimacs_dir);
    if (*solve) {
      const auto shard = parse_shard(shard_text);
      return run_search(n, common, shard,
                        "shard-" + std::to_string(n) + "-" + std::to_string(shard.index) + "-of-" +
                            std::to_string(shard.count));
    }
    if (*enumerate) return run_search(n, common, Shard{}, "good-" + std::to_string(n));
    if (*verify) return cmd_verify(path);
    if (*hadamard) return cmd_hadamard(path, common);
    if (*oracle) return cmd_oracle(n, common);
    if (*report) return cmd_report(path);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConstructionError& e) {
    std::cerr << "construction failed: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
