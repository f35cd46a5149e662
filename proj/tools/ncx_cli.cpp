#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncx/ncx.hpp"

namespace {

using ncx::json;

constexpr int kOk = 0;
constexpr int kFalsified = 1;
constexpr int kMalformed = 2;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw ncx::MalformedInput(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const std::string& path) { return ncx::parse_document(read_input(path)); }

struct Output {
  std::string path = "-";
  void write(const json& j) const { write_text(ncx::canonical(j)); }
  void write_text(const std::string& text) const {
    if (path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw ncx::Error("cannot write " + path);
    out << text;
  }
};

ncx::RingDescriptor parse_ring(const std::string& spec) {
  // prime_field:P, rationals, truncated_poly:P:M
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  json j;
  try {
    if (parts.size() == 1 && parts[0] == "rationals") j = {{"kind", "rationals"}};
    else if (parts.size() == 2 && parts[0] == "prime_field") j = {{"kind", parts[0]}, {"p", std::stoll(parts[1])}};
    else if (parts.size() == 3 && parts[0] == "truncated_poly")
      j = {{"kind", parts[0]}, {"p", std::stoll(parts[1])}, {"m", std::stoll(parts[2])}};
    else throw ncx::MalformedInput("--ring", "expected prime_field:P, rationals or truncated_poly:P:M");
  } catch (const std::logic_error&) {
    throw ncx::MalformedInput("--ring", "expected prime_field:P, rationals or truncated_poly:P:M");
  }
  return ncx::ring_from_json(j, "--ring");
}

/// Runs fn(ring, doc) with the document's ring.
template <class Fn>
int with_doc(const json& doc, Fn&& fn) {
  return ncx::with_ring(ncx::document_ring(doc), [&](const auto& ring) { return fn(ring); });
}

std::string quotient_text(const ncx::QuotientDim& q) {
  std::string s = std::to_string(q.dim);
  if (!q.x_ranks.empty()) {
    s += "  x-ranks";
    for (auto r : q.x_ranks) s += " " + std::to_string(r);
  }
  return s;
}

int cmd_validate(const std::string& path, const Output& out) {
  auto doc = load(path);
  auto kind = ncx::document_kind(doc);
  return with_doc(doc, [&](const auto& ring) {
    if (kind == "ncomplex") ncx::complex_from_json(ring, doc);
    else if (kind == "chain_map") ncx::chain_map_from_json(ring, doc);
    else if (kind == "rep_complex") ncx::rep_complex_from_json(ring, doc);
    else throw ncx::MalformedInput("kind", "cannot validate documents of kind '" + kind + "'");
    out.write_text("ok\n");
    return kOk;
  });
}

int cmd_homology(const std::string& path, bool as_json, const Output& out) {
  auto doc = load(path);
  return with_doc(doc, [&](const auto& ring) {
    auto x = ncx::complex_from_json(ring, doc);
    auto h = ncx::homology(x);
    if (as_json) {
      out.write(ncx::homology_to_json(x, h));
      return kOk;
    }
    std::string text;
    for (const auto& [key, q] : h.entries)
      text += "H^" + std::to_string(key.first) + "_" + std::to_string(key.second) + " = " + quotient_text(q) + "\n";
    text += h.is_zero() ? "N-exact\n" : "not N-exact\n";
    out.write_text(text);
    return kOk;
  });
}

template <class Fn>
int transform(const std::string& path, const Output& out, Fn&& fn) {
  auto doc = load(path);
  return with_doc(doc, [&](const auto& ring) {
    out.write(ncx::complex_to_json(fn(ncx::complex_from_json(ring, doc))));
    return kOk;
  });
}

int cmd_cone(const std::string& path, const Output& out) {
  auto doc = load(path);
  return with_doc(doc, [&](const auto& ring) {
    out.write(ncx::complex_to_json(ncx::cone(ncx::chain_map_from_json(ring, doc))));
    return kOk;
  });
}

int cmd_apply_f(const std::string& path, const Output& out) {
  auto doc = load(path);
  auto kind = ncx::document_kind(doc);
  return with_doc(doc, [&](const auto& ring) {
    if (kind == "chain_map") out.write(ncx::rep_chain_map_to_json(ncx::f_mor(ncx::chain_map_from_json(ring, doc))));
    else out.write(ncx::rep_complex_to_json(ncx::f_obj(ncx::complex_from_json(ring, doc))));
    return kOk;
  });
}

int cmd_hom_dim(const std::string& src, const std::string& tgt, const Output& out) {
  auto a = load(src), b = load(tgt);
  auto ra = ncx::document_ring(a), rb = ncx::document_ring(b);
  if (ra.kind != rb.kind || ra.p != rb.p || ra.m != rb.m) throw ncx::MalformedInput(tgt, "ring differs from source");
  auto kind = ncx::document_kind(a);
  if (ncx::document_kind(b) != kind) throw ncx::MalformedInput(tgt, "kind differs from source");
  return with_doc(a, [&](const auto& ring) {
    ncx::HomDims d;
    if (kind == "rep_complex")
      d = ncx::rep_hom_space_dim(ncx::rep_complex_from_json(ring, a), ncx::rep_complex_from_json(ring, b));
    else
      d = ncx::hom_space_dim(ncx::complex_from_json(ring, a), ncx::complex_from_json(ring, b));
    out.write({{"schema_version", ncx::kSchemaVersion},
               {"kind", "hom_dims"},
               {"chain_maps", d.chain_maps},
               {"null_homotopic", d.null_homotopic},
               {"hom_k", d.hom_k}});
    return kOk;
  });
}

int cmd_nullhomotopy(const std::string& path, const Output& out) {
  auto doc = load(path);
  return with_doc(doc, [&](const auto& ring) {
    auto f = ncx::chain_map_from_json(ring, doc);
    auto w = ncx::null_homotopy(f);
    if (!w) {
      std::cerr << "map is not null-homotopic\n";
      out.write({{"schema_version", ncx::kSchemaVersion},
                 {"kind", "counterexample"},
                 {"property", "null-homotopic"},
                 {"message", "map is not null-homotopic"},
                 {"input", ncx::chain_map_to_json(f)}});
      return kFalsified;
    }
    out.write(ncx::witness_to_json(f, *w));
    return kOk;
  });
}

int cmd_tac(const std::string& path, const std::string& battery, std::uint64_t seed, int randoms, const Output& out) {
  auto doc = load(path);
  if (battery != "default" && battery != "disks") throw ncx::MalformedInput("--battery", "expected default or disks");
  return with_doc(doc, [&](const auto& ring) {
    auto x = ncx::complex_from_json(ring, doc);
    auto b = ncx::default_battery(x, seed, battery == "disks" ? 0 : randoms);
    auto r = ncx::correspondence_check(x, b);
    json report = {{"schema_version", ncx::kSchemaVersion},
                   {"kind", "tac_report"},
                   {"battery_size", b.members.size()},
                   {"n_exact", r.n_exact},
                   {"n_acyclic_hom", r.n_acyclic_hom},
                   {"n_totally_acyclic", r.n_totally_acyclic},
                   {"dual_exact", r.dual_exact},
                   {"f_acyclic", r.f_acyclic},
                   {"f_totally_acyclic", r.f_totally_acyclic},
                   {"correspondence", r.ok()}};
    if (!r.note.empty()) report["note"] = r.note;
    if (!(r.ok() && r.n_totally_acyclic)) report["input"] = ncx::complex_to_json(x);
    out.write(report);
    return r.ok() && r.n_totally_acyclic ? kOk : kFalsified;
  });
}

std::vector<int> parse_int_list(const std::string& s, const char* opt) {
  std::vector<int> v;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      v.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
      throw ncx::MalformedInput(opt, "expected a comma-separated list of integers");
    }
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with N-complexes and their classical images"};
  app.require_subcommand(1);
  Output out;
  std::string input = "-";
  auto add_io = [&](CLI::App* c, bool needs_input = true) {
    if (needs_input) c->add_option("input", input, "input document, - for stdin")->default_val("-");
    c->add_option("-o,--output", out.path, "output file, - for stdout")->default_val("-");
    c->add_option("--format", "output format")->check(CLI::IsMember({"json"}));
  };

  auto* validate = app.add_subcommand("validate", "check a document");
  add_io(validate);

  bool homology_json = false;
  auto* homology = app.add_subcommand("homology", "amplitude homology table");
  add_io(homology);
  homology->add_flag("--json", homology_json, "emit a homology document");

  auto* cone = app.add_subcommand("cone", "mapping cone of a chain map");
  add_io(cone);

  bool inverse = false;
  auto* sigma = app.add_subcommand("sigma", "suspension");
  add_io(sigma);
  sigma->add_flag("--inverse", inverse, "apply the inverse suspension");

  int k = 0;
  auto* theta = app.add_subcommand("theta", "degree shift, (Theta^k X)^i = X^{i+k}");
  add_io(theta);
  theta->add_option("--k", k)->required();

  int N = 3, dj = 0, di = 1;
  std::size_t rank = 1;
  std::string ring_spec = "prime_field:2";
  auto* disk = app.add_subcommand("disk", "disk complex D^j_i(R^rank)");
  add_io(disk, false);
  disk->add_option("--N", N)->required()->check(CLI::Range(2, 1000));
  disk->add_option("--ring", ring_spec, "prime_field:P, rationals or truncated_poly:P:M")->default_val("prime_field:2");
  disk->add_option("--j", dj, "top degree")->required();
  disk->add_option("--i", di, "length")->required();
  disk->add_option("--rank", rank)->default_val(1);

  auto* apply_f = app.add_subcommand("apply-f", "image of a complex or chain map under F");
  add_io(apply_f);

  std::string target;
  auto* hom_dim = app.add_subcommand("hom-dim", "dimensions of chain maps, null-homotopic maps and hom_K");
  hom_dim->add_option("source", input)->required();
  hom_dim->add_option("target", target)->required();
  hom_dim->add_option("-o,--output", out.path)->default_val("-");

  auto* nullhomotopy = app.add_subcommand("nullhomotopy", "witness s for a null-homotopic chain map");
  add_io(nullhomotopy);

  int at = 0, periods = 3;
  auto* truncate = app.add_subcommand("truncate", "brutal truncation keeping degrees <= n");
  add_io(truncate);
  truncate->add_option("--at", at)->required();
  truncate->add_option("--periods", periods, "periods kept below n for periodic input")->default_val(3);

  std::string battery = "default";
  std::uint64_t seed = 0;
  int randoms = 25;
  auto* tac = app.add_subcommand("tac-check", "battery-relative total acyclicity on both sides of F");
  add_io(tac);
  tac->add_option("--battery", battery)->default_val("default");
  tac->add_option("--seed", seed)->default_val(0);
  tac->add_option("--randoms", randoms, "random members of the default battery")->default_val(25);

  std::uint64_t trial = 0;
  ncx::RandomBounds bounds;
  auto* random = app.add_subcommand("random", "seeded random N-complex");
  add_io(random, false);
  random->add_option("--seed", seed)->required();
  random->add_option("--trial", trial)->default_val(0);
  random->add_option("--N", N)->default_val(3)->check(CLI::Range(2, 1000));
  random->add_option("--ring", ring_spec)->default_val("prime_field:2");
  random->add_option("--max-rank", bounds.max_rank)->default_val(2)->check(CLI::PositiveNumber);
  random->add_option("--max-width", bounds.max_width)->default_val(6)->check(CLI::PositiveNumber);
  random->add_option("--max-pieces", bounds.max_pieces)->default_val(3)->check(CLI::PositiveNumber);

  std::string property, ns = "2,3,4,5", rings = "prime_field:2,prime_field:3,rationals", cex = "";
  int trials = 100, single = -1, width = 0;
  auto* check = app.add_subcommand("check", "seeded property campaign");
  check->add_option("property", property)->required()->check(CLI::IsMember(ncx::property_names()));
  check->add_option("--trials", trials)->default_val(100)->check(CLI::PositiveNumber);
  check->add_option("--seed", seed)->default_val(0);
  check->add_option("--N", ns, "comma-separated N values")->default_val("2,3,4,5");
  check->add_option("--rings", rings, "comma-separated ring specs")->default_val("prime_field:2,prime_field:3,rationals");
  check->add_option("--max-rank", bounds.max_rank)->default_val(2);
  check->add_option("--max-width", width, "0 picks a per-property default")->default_val(0);
  check->add_option("--trial", single, "run only this trial index")->default_val(-1);
  check->add_option("--counterexample", cex, "file for the first failing trial's document");
  check->add_option("-o,--output", out.path)->default_val("-");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (*validate) return cmd_validate(input, out);
    if (*homology) return cmd_homology(input, homology_json, out);
    if (*cone) return cmd_cone(input, out);
    if (*sigma) return transform(input, out, [&](const auto& x) { return inverse ? ncx::sigma_inv(x) : ncx::sigma(x); });
    if (*theta) return transform(input, out, [&](const auto& x) { return ncx::theta(x, k); });
    if (*truncate) return transform(input, out, [&](const auto& x) { return ncx::brutal_truncate(x, at, periods); });
    if (*apply_f) return cmd_apply_f(input, out);
    if (*hom_dim) return cmd_hom_dim(input, target, out);
    if (*nullhomotopy) return cmd_nullhomotopy(input, out);
    if (*tac) return cmd_tac(input, battery, seed, randoms, out);
    if (*disk) {
      if (di < 1 || di > N) throw ncx::MalformedInput("--i", "length must lie in 1..N");
      return ncx::with_ring(parse_ring(ring_spec), [&](const auto& ring) {
        out.write(ncx::complex_to_json(ncx::disk(N, ring, dj, di, rank)));
        return kOk;
      });
    }
    if (*random) {
      return ncx::with_ring(parse_ring(ring_spec), [&](const auto& ring) {
        ncx::Rng rng(seed, trial);
        out.write(ncx::complex_to_json(ncx::random_ncomplex(N, ring, rng, bounds)));
        return kOk;
      });
    }
    if (*check) {
      ncx::CampaignConfig c;
      c.property = property;
      c.seed = seed;
      c.trials = trials;
      c.Ns = parse_int_list(ns, "--N");
      for (int n : c.Ns)
        if (n < 2) throw ncx::MalformedInput("--N", "N must be >= 2");
      c.rings.clear();
      std::stringstream ss(rings);
      for (std::string item; std::getline(ss, item, ',');) c.rings.push_back(parse_ring(item));
      c.bounds.max_rank = bounds.max_rank;
      c.bounds.max_width = width;
      ncx::CampaignReport r;
      if (single >= 0) {
        auto o = ncx::campaign_trial(c, single);
        r.property = property;
        r.trials = 1;
        r.passed = o.ok ? 1 : 0;
        r.fallbacks = o.fallback ? 1 : 0;
        if (!o.ok) {
          r.first_failure = single;
          r.message = o.message;
          r.counterexample = o.counterexample;
        }
        r.results.push_back({{"trial", single}, {"ok", o.ok}});
        if (!o.detail.empty()) r.results.back()["detail"] = o.detail;
      } else {
        r = ncx::run_campaign(c);
      }
      json report = {{"schema_version", ncx::kSchemaVersion},
                     {"kind", "campaign_report"},
                     {"property", r.property},
                     {"seed", seed},
                     {"trials", r.trials},
                     {"passed", r.passed},
                     {"fallbacks", r.fallbacks},
                     {"results", r.results}};
      if (!r.ok()) {
        report["first_failure"] = r.first_failure;
        report["message"] = r.message;
        if (!r.counterexample.is_null()) report["counterexample"] = r.counterexample;
        if (!cex.empty()) Output{cex}.write(r.counterexample);
      }
      out.write(report);
      std::cerr << r.property << ": " << r.passed << "/" << r.trials << " passed\n";
      return r.ok() ? kOk : kFalsified;
    }
  } catch (const ncx::MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const ncx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
  return kOk;
}
