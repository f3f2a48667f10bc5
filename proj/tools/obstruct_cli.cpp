// obstruct: command-line front end.
//
//   obstruct cohomology  --builtin torus7 -p 1 -k Z2
//   obstruct obstruction --builtin rp2_6 --cocycle mobius --extension z4_over_z2 [--brute-force]
//   obstruct whitney     --builtin rp2_6 --cocycle random --cocycle mobius --extension z4_over_z2 --fusion mod2
//   obstruct whitney     --builtin torus7 --cocycle random --extension q8_over_v4 --hyperbolic
//   obstruct count       --builtin torus7 --extension z4_over_z2 --hyperbolic
//   obstruct catalog
//
// Exit status: 0 when every asserted check passes, 1 when one fails,
// 2 on unreadable input or bad flags, 3 on well-formed but invalid input.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "obstruct/all.hpp"
#include "report.hpp"

using namespace obs;
using obs::cli::json;
using obs::cli::RunReport;

namespace {

constexpr const char* cap_env = "OBSTRUCT_CAP";

struct Options {
  std::string builtin;
  std::string complex_path;
  std::vector<std::string> cocycles;
  std::vector<std::string> extensions;
  std::string fusion = "mod2";
  bool hyperbolic = false;
  bool brute_force = false;
  std::uint64_t seed = 0;
  std::string format = "human";
  std::optional<std::uint64_t> cap;
  int degree = 1;
  std::string coefficients = "Z2";
  bool basis = false;
};

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Parse, "cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t effective_cap(const Options& o) {
  if (o.cap) return *o.cap;
  if (const char* env = std::getenv(cap_env)) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::Parse, std::string(cap_env) + " must be a positive integer");
  }
  return default_brute_force_cap;
}

struct Context {
  ComplexPtr X;
  std::string complex_ref;
};

std::optional<Context> complex_from_flags(const Options& o, RunReport& r) {
  if (!o.builtin.empty()) {
    r.inputs["complex"] = "builtin:" + o.builtin;
    return Context{share(builtin_complex(o.builtin)), "builtin:" + o.builtin};
  }
  if (!o.complex_path.empty()) {
    r.inputs["complex"] = o.complex_path;
    r.inputs["complex_digest"] = file_digest(o.complex_path);
    return Context{share(load_complex(o.complex_path)), o.complex_path};
  }
  return std::nullopt;
}

CentralExtension extension_from_ref(const std::string& ref, RunReport& r, std::size_t i) {
  const std::string key = i == 0 ? "extension" : "extension_" + std::to_string(i);
  for (const auto& n : builtin_extension_names())
    if (n == ref) {
      r.inputs[key] = ref;
      return builtin_extension(ref);
    }
  r.inputs[key] = ref;
  r.inputs[key + "_digest"] = file_digest(ref);
  return load_extension(ref);
}

// A cocycle reference is `identity`, `random`, `mobius` or a cocycle file.
BundleCocycle cocycle_from_ref(const std::string& ref, std::optional<Context>& ctx, const FiniteGroup& group, std::uint64_t seed,
                               RunReport& r, std::size_t i) {
  const std::string key = i == 0 ? "cocycle" : "cocycle_" + std::to_string(i);
  r.inputs[key] = ref;
  if (ref == "identity" || ref == "random" || ref == "mobius") {
    if (ref == "mobius") {
      auto s = rp2_mobius_cocycle(group);
      if (ctx) require(same_base(ctx->X, s.base), ErrorCode::BaseMismatch, "the mobius cocycle lives on rp2_6");
      if (!ctx) {
        ctx = Context{s.base, "builtin:rp2_6"};
        r.inputs["complex"] = ctx->complex_ref;
      }
      s.base = ctx->X;
      return s;
    }
    if (!ctx) fail(ErrorCode::Parse, "cocycle '" + ref + "' needs --builtin or --complex");
    if (ref == "identity") return identity_cocycle(ctx->X, group);
    r.inputs[key + "_seed"] = seed;
    return random_cocycle(ctx->X, group, seed);
  }
  r.inputs[key + "_digest"] = file_digest(ref);
  BundleCocycle s = load_cocycle(ref);
  if (ctx)
    require(same_base(ctx->X, s.base), ErrorCode::BaseMismatch, "cocycle file '" + ref + "' is on a different complex");
  else {
    ctx = Context{s.base, ref};
    r.inputs["complex"] = ref;
  }
  s.base = ctx->X;
  require(s.group == group, ErrorCode::InvalidInput, "cocycle group differs from the extension base group");
  auto check = validate_cocycle(s);
  if (!check) fail(ErrorCode::InvalidInput, "cocycle condition fails on triangle " + to_string(*check.failing_triangle));
  return s;
}

json cochain_table(const Cochain& q) {
  json t = json::array();
  const auto& simplices = q.complex().simplices_of_dim(q.degree());
  for (std::size_t i = 0; i < q.size(); ++i)
    t.push_back({{"simplex", to_string(simplices[i])}, {"value", q.coefficients().format(q[i])}});
  return t;
}

json lift_table(const ComplexPtr& X, const FiniteGroup& E, const Lift& lift) {
  json t = json::array();
  const auto& edges = X->simplices_of_dim(1);
  for (std::size_t i = 0; i < edges.size(); ++i) t.push_back({{"edge", to_string(edges[i])}, {"value", E.name_of(lift.values[i])}});
  return t;
}

std::size_t support(const Cochain& q) {
  std::size_t n = 0;
  for (const auto& v : q.values()) n += v != q.coefficients().zero();
  return n;
}

// Raw triangle products must land in the kernel and match q.
bool obstruction_matches(const BundleCocycle& s, const CentralExtension& ext, const Section& sigma, const Cochain& q) {
  const auto& E = ext.total();
  const auto& tris = s.base->simplices_of_dim(2);
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Vertex a = tris[t].vertices[0], b = tris[t].vertices[1], c = tris[t].vertices[2];
    const int x = E.mul(E.mul(sigma(s.value(b, c)), E.inv(sigma(s.value(a, c)))), sigma(s.value(a, b)));
    if (ext.rho(x) != ext.base().identity() || ext.embed(q[t]) != x) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

RunReport cmd_cohomology(const Options& o) {
  RunReport r;
  r.command = "cohomology";
  auto ctx = complex_from_flags(o, r);
  if (!ctx) fail(ErrorCode::Parse, "cohomology needs --builtin or --complex");
  r.inputs["complex_hash"] = complex_hash(*ctx->X);
  const AbelianGroup K = parse_group_literal(o.coefficients);
  require(o.degree >= 0, ErrorCode::InvalidInput, "degree must be >= 0");
  const auto H = cohomology(ctx->X, o.degree, K);
  r.payload["degree"] = o.degree;
  r.payload["coefficients"] = K.name();
  r.payload["invariant_factors"] = H.invariant_factors;
  r.payload["order"] = H.order();
  if (H.dimension) r.payload["dimension"] = *H.dimension;
  if (o.basis) {
    require(H.prime.has_value(), ErrorCode::InvalidInput, "--basis needs prime cyclic coefficients");
    json b = json::array();
    bool all_cocycles = true;
    for (const auto& f : H.basis) {
      json supp = json::array();
      const auto& simplices = ctx->X->simplices_of_dim(o.degree);
      for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] != K.zero()) supp.push_back(to_string(simplices[i]) + "=" + K.format(f[i]));
      b.push_back(supp);
      all_cocycles = all_cocycles && is_cocycle(f) && !is_coboundary(f);
    }
    r.payload["basis"] = b;
    r.check("basis_nontrivial_cocycles", all_cocycles);
  }
  if (H.prime) {
    long alt = 0;
    for (int p = 0; p <= ctx->X->dimension(); ++p)
      alt += (p % 2 ? -1 : 1) * static_cast<long>(p == o.degree ? *H.dimension : *cohomology(ctx->X, p, K).dimension);
    r.check("euler_poincare", alt == ctx->X->euler_characteristic(),
            "alternating sum " + std::to_string(alt) + ", chi " + std::to_string(ctx->X->euler_characteristic()));
  }
  return r;
}

RunReport cmd_obstruction(const Options& o) {
  RunReport r;
  r.command = "obstruction";
  require(o.extensions.size() == 1, ErrorCode::Parse, "obstruction takes exactly one --extension");
  require(o.cocycles.size() <= 1, ErrorCode::Parse, "obstruction takes at most one --cocycle");
  auto ctx = complex_from_flags(o, r);
  const CentralExtension ext = extension_from_ref(o.extensions[0], r, 0);
  const BundleCocycle s = cocycle_from_ref(o.cocycles.empty() ? "identity" : o.cocycles[0], ctx, ext.base(), o.seed, r, 0);
  r.inputs["complex_hash"] = complex_hash(*ctx->X);

  const auto res = obstruction_class(s, ext);
  r.payload["kernel"] = ext.kernel().name();
  r.payload["q"] = cochain_table(res.q);
  r.payload["q_support"] = support(res.q);
  r.payload["kappa"] = res.trivial ? "trivial" : "NONTRIVIAL";
  if (res.global_lift) r.payload["lift"] = lift_table(s.base, ext.total(), *res.global_lift);

  r.check("obstruction_in_kernel", obstruction_matches(s, ext, res.section, res.q));
  r.check("obstruction_cocycle", is_cocycle(res.q));
  std::mt19937_64 rng(o.seed);
  const Section other = random_section(ext, rng);
  r.check("section_independence", classes_equal(res.q, obstruction_cocycle(s, ext, other)));
  if (res.global_lift) r.check("lift_verified", verify_lift(s, ext, *res.global_lift));
  if (o.brute_force) {
    const auto brute = brute_force_lift(s, ext, effective_cap(o));
    r.payload["brute_force"] = brute ? "lift found" : "NONE";
    r.check("lifting_criterion", brute.has_value() == res.trivial);
    if (brute) r.check("brute_force_lift_verified", verify_lift(s, ext, *brute));
  }
  return r;
}

RunReport cmd_whitney(const Options& o) {
  RunReport r;
  r.command = "whitney";
  require(o.fusion == "mod2", ErrorCode::Parse, "only --fusion mod2 is supported");
  require(!o.extensions.empty(), ErrorCode::Parse, "whitney needs --extension");
  auto ctx = complex_from_flags(o, r);

  std::vector<std::string> cocycle_refs = o.cocycles;
  if (cocycle_refs.empty()) cocycle_refs.push_back("random");
  if (o.hyperbolic) require(cocycle_refs.size() == 1, ErrorCode::Parse, "--hyperbolic takes one cocycle");
  const std::size_t n = o.hyperbolic ? 2 : cocycle_refs.size();
  require(o.extensions.size() == 1 || o.extensions.size() == cocycle_refs.size(), ErrorCode::Parse,
          "give one --extension, or one per --cocycle");

  std::vector<CentralExtension> exts;
  std::vector<BundleCocycle> cocycles;
  for (std::size_t i = 0; i < cocycle_refs.size(); ++i) {
    exts.push_back(o.extensions.size() == 1 && i > 0 ? exts[0] : extension_from_ref(o.extensions[i], r, i));
    cocycles.push_back(cocycle_from_ref(cocycle_refs[i], ctx, exts[i].base(), o.seed + i, r, i));
  }
  for (auto& s : cocycles) require(same_base(s.base, ctx->X), ErrorCode::BaseMismatch, "summands live on different complexes");
  for (const auto& e : exts) require(e.kernel() == AbelianGroup::cyclic(2), ErrorCode::InvalidInput, "mod 2 fusion needs kernel Z2");
  if (o.hyperbolic) {
    exts.push_back(exts[0]);
    cocycles.push_back(cocycles[0]);
  }
  r.inputs["complex_hash"] = complex_hash(*ctx->X);

  const AbelianHom mu = fusion_hom_mod2(static_cast<int>(n));
  const auto w = whitney_obstruction(cocycles, exts, mu);
  r.payload["summands"] = n;
  r.payload["hyperbolic"] = o.hyperbolic;
  r.payload["fusion"] = o.fusion;
  json comps = json::array();
  for (const auto& c : w.components) comps.push_back({{"kappa", c.trivial ? "trivial" : "NONTRIVIAL"}, {"q_support", support(c.q)}});
  r.payload["components"] = comps;
  r.payload["fused_total_order"] = w.extension.fused.total().order();
  r.payload["q_fused"] = cochain_table(w.fused.q);
  r.payload["kappa"] = w.fused.trivial ? "trivial" : "NONTRIVIAL";
  if (w.fused.global_lift) r.payload["lift"] = lift_table(ctx->X, w.extension.fused.total(), *w.fused.global_lift);

  const auto exact = additivity_check(cocycles, exts, mu);
  r.check("additivity_cochain", exact.cochain_level, std::to_string(exact.mismatched_triangles.size()) + " mismatched triangles");
  std::mt19937_64 rng(o.seed);
  std::vector<Section> comp_sections;
  for (const auto& e : exts) comp_sections.push_back(random_section(e, rng));
  const auto other = additivity_check(cocycles, exts, mu, random_section(w.extension.fused, rng), comp_sections);
  r.check("additivity_class", exact.class_level && other.class_level);
  if (w.fused.global_lift) r.check("lift_verified", verify_lift(w.sum, w.extension.fused, *w.fused.global_lift));
  if (o.hyperbolic) r.check("cancellation", w.fused.trivial && w.fused.global_lift.has_value());
  if (o.brute_force) {
    const auto brute = brute_force_lift(w.sum, w.extension.fused, effective_cap(o));
    r.payload["brute_force"] = brute ? "lift found" : "NONE";
    r.check("lifting_criterion", brute.has_value() == w.fused.trivial);
  }
  return r;
}

RunReport cmd_count(const Options& o) {
  RunReport r;
  r.command = "count";
  require(o.extensions.size() == 1, ErrorCode::Parse, "count takes exactly one --extension");
  require(o.cocycles.size() <= 1, ErrorCode::Parse, "count takes at most one --cocycle");
  auto ctx = complex_from_flags(o, r);
  const CentralExtension ext = extension_from_ref(o.extensions[0], r, 0);
  const BundleCocycle s0 = cocycle_from_ref(o.cocycles.empty() ? "identity" : o.cocycles[0], ctx, ext.base(), o.seed, r, 0);
  r.inputs["complex_hash"] = complex_hash(*ctx->X);

  BundleCocycle s = s0;
  CentralExtension target = ext;
  if (o.hyperbolic) {
    require(ext.kernel() == AbelianGroup::cyclic(2), ErrorCode::InvalidInput, "--hyperbolic needs kernel Z2");
    const auto w = hyperbolic_obstruction(s0, ext);
    r.check("cancellation", w.fused.trivial);
    s = w.sum;
    target = w.extension.fused;
  }
  const auto res = obstruction_class(s, target);
  const auto count = count_inequivalent_lifts(s, target);
  const auto H1 = cohomology(ctx->X, 1, target.kernel());
  r.payload["hyperbolic"] = o.hyperbolic;
  r.payload["kernel"] = target.kernel().name();
  r.payload["kappa"] = res.trivial ? "trivial" : "NONTRIVIAL";
  r.payload["count"] = count.value_or(0);
  r.payload["h1_order"] = H1.order();
  if (count) {
    if (H1.prime) {
      const auto classes = enumerate_classes(ctx->X, 1, target.kernel(), effective_cap(o));
      r.check("count_matches_h1", *count == classes.size(), std::to_string(classes.size()) + " enumerated classes");
    } else {
      r.check("count_matches_h1", *count == H1.order());
    }
  }
  if (o.brute_force) {
    const auto brute = brute_force_lift_classes(s, target, effective_cap(o));
    r.payload["brute_force_count"] = brute;
    r.check("brute_force_partition", brute == count.value_or(0));
  }
  return r;
}

RunReport cmd_catalog(const Options&) {
  RunReport r;
  r.command = "catalog";
  json cs = json::array();
  for (const auto& name : builtin_complex_names()) {
    auto X = share(builtin_complex(name));
    json dims = json::array();
    for (int p = 0; p <= 2; ++p) dims.push_back(*cohomology(X, p, AbelianGroup::cyclic(2)).dimension);
    cs.push_back({{"name", name},
                  {"vertices", X->count(0)},
                  {"edges", X->count(1)},
                  {"triangles", X->count(2)},
                  {"euler_characteristic", X->euler_characteristic()},
                  {"z2_betti", dims},
                  {"hash", complex_hash(*X)}});
  }
  json es = json::array();
  for (const auto& name : builtin_extension_names()) {
    auto e = builtin_extension(name);
    es.push_back({{"name", name},
                  {"total_order", e.total().order()},
                  {"base_order", e.base().order()},
                  {"kernel", e.kernel().name()},
                  {"kernel_order", e.kernel().order()},
                  {"split", is_split(e)}});
  }
  r.payload["complexes"] = cs;
  r.payload["extensions"] = es;
  return r;
}

void emit(const RunReport& r, const std::string& format) {
  if (format == "machine")
    std::cout << cli::to_json(r).dump(2) << '\n';
  else
    cli::render_human(std::cout, r);
}

int exit_code_for(const Error& e) {
  if (e.code() == ErrorCode::Parse) return 2;
  // library postconditions raise INTERNAL when a checked identity fails
  if (e.code() == ErrorCode::Internal) return 1;
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Obstructions to lifting finite-group bundle cocycles on simplicial nerves"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool complex, bool bundle) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "machine"}));
    if (complex) {
      auto* b = sub->add_option("--builtin", o.builtin, "Builtin complex")->check(CLI::IsMember(builtin_complex_names()));
      auto* c = sub->add_option("--complex", o.complex_path, "Complex file (one facet per line)");
      b->excludes(c);
    }
    if (bundle) {
      sub->add_option("--cocycle", o.cocycles, "identity | random | mobius | cocycle file (repeatable for whitney)");
      sub->add_option("--extension", o.extensions, "Builtin extension name or extension file");
      sub->add_option("--seed", o.seed, "Seed for random cocycles and sections");
      sub->add_flag("--brute-force", o.brute_force, "Cross-check by exhaustive search");
      sub->add_option("--cap", o.cap, std::string("Brute-force/enumeration cap (default from ") + cap_env + " or 2^24)")
          ->check(CLI::PositiveNumber);
    }
  };

  auto* coh = app.add_subcommand("cohomology", "Cohomology of a complex with finite abelian coefficients");
  add_common(coh, true, false);
  coh->add_option("-p,--degree", o.degree, "Degree");
  coh->add_option("-k,--coefficients", o.coefficients, "Coefficient group literal, e.g. Z2 or Z2xZ4");
  coh->add_flag("--basis", o.basis, "Print a basis of class representatives");

  auto* obst = app.add_subcommand("obstruction", "Obstruction class of one cocycle through one extension");
  add_common(obst, true, true);

  auto* whit = app.add_subcommand("whitney", "Fused obstruction of a sum of cocycles");
  add_common(whit, true, true);
  whit->add_option("--fusion", o.fusion, "Fusion of the summed kernels")->check(CLI::IsMember({"mod2"}));
  whit->add_flag("--hyperbolic", o.hyperbolic, "Sum a cocycle with itself");

  auto* cnt = app.add_subcommand("count", "Number of inequivalent lifts");
  add_common(cnt, true, true);
  cnt->add_flag("--hyperbolic", o.hyperbolic, "Count lifts of the doubled cocycle");

  auto* cat = app.add_subcommand("catalog", "Builtin complexes and extensions");
  add_common(cat, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  try {
    if (*coh) report = cmd_cohomology(o);
    if (*obst) report = cmd_obstruction(o);
    if (*whit) report = cmd_whitney(o);
    if (*cnt) report = cmd_count(o);
    if (*cat) report = cmd_catalog(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(report, o.format);
  return report.passed() ? 0 : 1;
}
