#include "tropref/cli.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "tropref/io.hpp"

namespace tropref::cli {

namespace {

using io::json;

struct Options {
  std::string command;
  std::string input;
  std::string backend = "resolution";
  int max_codim = -1;
  int threads = 1;
  bool trace = false;
  std::vector<long> r;
  std::string rooting;
  std::uint64_t seed = 0;
  int max_vertices = 0;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("$", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_bytes(const std::string& bytes) {
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InputError("$", std::string("invalid JSON: ") + e.what());
  }
}

// Thrown with a result to report alongside a nonzero exit code.
struct Finding {
  int code;
  json result;
};

void require_valid(const io::Fixture& fx) {
  if (!fx.complex) return;
  ValidationReport rep = validate_complex(*fx.complex);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    throw InputError("$.cones", v.kind + ": " + v.detail);
  }
}

EnumerationBounds bounds_of(const Options& o) { return {o.max_vertices, o.threads}; }

const NumericalData& need_numerical(const io::Fixture& fx) {
  if (!fx.numerical) throw InputError("$.numerical", "missing field");
  return *fx.numerical;
}

const TargetModel& need_model(const io::Fixture& fx) {
  if (!fx.model) throw InputError("$.numerical.strata", "missing field");
  return *fx.model;
}

void require_balanced(const NumericalData& nd) {
  NumericalReport rep = validate_numerical_data(nd);
  if (!rep.shape_errors.empty()) throw InputError("$.numerical", rep.shape_errors.front());
  if (!rep.unbalanced.empty())
    throw InputError("$.numerical", "global balancing fails for divisor " + std::to_string(rep.unbalanced.front() + 1));
}

json trace_json(const std::vector<SubdivisionStep>& t) {
  json a = json::array();
  for (const auto& s : t) a.push_back(io::to_json(s));
  return a;
}

json types_json(const EnumerationResult& er) {
  json types = json::array();
  for (const auto& t : er.types) types.push_back(io::to_json(t));
  return {{"types", types},
          {"count", er.types.size()},
          {"complete", er.complete},
          {"vertex_bound", er.vertex_bound},
          {"note", er.note}};
}

json cmd_validate(const io::Fixture& fx) {
  json out = json::object();
  bool ok = true;
  if (fx.complex) {
    ValidationReport rep = validate_complex(*fx.complex);
    out["complex"] = io::to_json(rep);
    out["fingerprint"] = fx.complex->fingerprint();
    out["k_p"] = fx.offsets.k_p();
    ok = ok && rep.ok();
  }
  if (fx.numerical) {
    NumericalReport rep = validate_numerical_data(*fx.numerical);
    auto one_based = [](const std::vector<int>& v) {
      std::vector<int> w;
      for (int x : v) w.push_back(x + 1);
      return w;
    };
    out["numerical"] = {{"ok", rep.ok()},
                        {"shape_errors", rep.shape_errors},
                        {"unbalanced", one_based(rep.unbalanced)},
                        {"ordinary", one_based(rep.ordinary)},
                        {"punctures", one_based(rep.punctures)},
                        {"ranks", rep.ranks},
                        {"k_p", rep.k_p}};
    ok = ok && rep.ok();
  }
  out["ok"] = ok;
  if (!ok) throw Finding{Inconsistent, out};
  return out;
}

json cmd_enumerate(const io::Fixture& fx, const Options& o) {
  const auto& nd = need_numerical(fx);
  require_balanced(nd);
  EnumerationResult er = enumerate_types(nd, need_model(fx), bounds_of(o));
  json out = types_json(er);
  if (o.trace) {
    AssembledComplex ac = assemble_complex(er.types, nd);
    out["assembled"] = {{"complex", io::to_json(*ac.complex)}, {"offsets", io::to_json(ac.offsets)},
                        {"non_smooth", ac.non_smooth}};
  }
  return out;
}

// The complex and offsets of a fixture, assembled from numerical data when
// no complex is given.
std::pair<ComplexPtr, PuncturingData> complex_of(const io::Fixture& fx, const Options& o, json& note) {
  if (fx.complex) return {fx.complex, fx.offsets};
  const auto& nd = need_numerical(fx);
  require_balanced(nd);
  EnumerationResult er = enumerate_types(nd, need_model(fx), bounds_of(o));
  AssembledComplex ac = assemble_complex(er.types, nd);
  note = {{"types", er.types.size()}, {"complete", er.complete}, {"complex", io::to_json(*ac.complex)},
          {"offsets", io::to_json(ac.offsets)}};
  return {ac.complex, ac.offsets};
}

json cmd_refined_class(const io::Fixture& fx, const Options& o) {
  json assembled;
  auto [c, pd] = complex_of(fx, o, assembled);
  PrincipalizeOptions popts;
  popts.seed = o.seed;
  popts.forced_centers = fx.forced_centers;
  if (pd.k_p() > 0 && puncturing_components(*c, pd).empty()) {
    json out{{"k_p", pd.k_p()}, {"message", "puncturing substack is empty"}};
    throw Finding{EmptyPuncturing, out};
  }
  RefinedClassResult rc = refined_class(c, pd, fx.mode, popts);
  json comps = json::array();
  for (const auto& s : rc.components) comps.push_back(s);
  json out{{"class", io::to_json(rc.cls)}, {"k_p", pd.k_p()}, {"components", comps},
           {"ideal", fx.mode == IdealMode::Offsets ? "offsets" : "reduced"}};
  if (o.trace) out["trace"] = trace_json(rc.trace);
  if (!assembled.is_null()) out["assembled"] = assembled;
  if (fx.normal_data) {
    ChowClass ex = refined_class_excess(c, pd, *fx.normal_data);
    out["excess"] = io::to_json(ex);
    out["excess_agrees"] = ex == rc.cls;
    if (!(ex == rc.cls)) throw Finding{Inconsistent, out};
  }
  if (o.backend == "aluffi-crosscheck") {
    int codim = o.max_codim >= 0 ? o.max_codim : static_cast<int>(c->dimension());
    CrossCheckReport rep = aluffi_crosscheck(c, puncturing_ideal(pd, fx.mode), codim);
    out["crosscheck"] = {{"checked", rep.checked}, {"skipped", rep.skipped}, {"mismatched", rep.mismatched},
                         {"ok", rep.ok()}};
    if (!rep.ok()) throw Finding{Inconsistent, out};
  }
  return out;
}

json cmd_segre(const io::Fixture& fx, const Options& o) {
  json assembled;
  auto [c, pd] = complex_of(fx, o, assembled);
  int codim = o.max_codim >= 0 ? o.max_codim : static_cast<int>(c->dimension());
  MonomialIdeal ideal = puncturing_ideal(pd, fx.mode);
  PrincipalizeOptions popts;
  popts.seed = o.seed;
  popts.forced_centers = fx.forced_centers;
  Principalization p = principalize(c, ideal, popts);
  ChowClass s = segre_class(c, ideal, codim, popts);
  json parts = json::object();
  for (int d = 1; d <= codim; ++d) parts[std::to_string(d)] = io::to_json(truncate(s, d));
  json out{{"segre", io::to_json(s)}, {"parts", parts}, {"max_codim", codim}};
  if (o.trace) {
    std::vector<SubdivisionStep> steps;
    for (const auto& sd : p.trace) steps.push_back(sd.step);
    out["trace"] = trace_json(steps);
  }
  if (o.backend == "aluffi-crosscheck") {
    CrossCheckReport rep = aluffi_crosscheck(c, ideal, codim);
    out["crosscheck"] = {{"checked", rep.checked}, {"skipped", rep.skipped}, {"mismatched", rep.mismatched},
                         {"ok", rep.ok()}};
    if (!rep.ok()) throw Finding{Inconsistent, out};
  }
  return out;
}

json cmd_twisted_check(const io::Fixture& fx, const Options& o, const std::string& base_dir) {
  const auto& nd = need_numerical(fx);
  require_balanced(nd);
  RootingData rd;
  if (!o.rooting.empty()) {
    std::filesystem::path p = o.rooting;
    if (p.is_relative() && !std::filesystem::exists(p)) p = std::filesystem::path(base_dir) / p;
    rd = io::parse_rooting(parse_bytes(slurp(p.string())));
  } else if (!o.r.empty()) {
    rd.r = o.r;
    if (static_cast<int>(rd.r.size()) == 1 && nd.k > 1) rd.r.assign(nd.k, o.r.front());
  } else {
    rd = prime_rooting(nd);
  }
  RootingReport rep = validate_rooting(nd, rd);
  if (!rep.ok()) throw InputError("$.r", rep.violations.front());
  IdentityReport ir = check_pushforward_identity(nd, need_model(fx), rd, bounds_of(o), fx.mode);
  json out{{"lhs", io::to_json(ir.lhs)}, {"rhs", io::to_json(ir.rhs)}, {"factor", to_string(ir.factor)},
           {"equal", ir.equal}, {"complete", ir.complete}, {"r", rd.r}, {"s", rep.s},
           {"size_violations", rep.size_violations}};
  if (!ir.equal) throw Finding{Inconsistent, out};
  return out;
}

json cmd_compare_blowup(const json& input, const std::string& base_dir) {
  const json& fj = input.contains("fixture") ? input["fixture"] : throw InputError("$.fixture", "missing field");
  io::Fixture fx;
  if (fj.is_string()) {
    std::filesystem::path p = fj.get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    fx = io::parse_fixture(parse_bytes(slurp(p.string())), "$.fixture");
  } else {
    fx = io::parse_fixture(fj, "$.fixture");
  }
  require_valid(fx);
  if (!fx.complex) throw InputError("$.fixture.cones", "missing field");
  if (!input.contains("trace")) throw InputError("$.trace", "missing field");
  auto trace = io::parse_trace(input["trace"], "$.trace");
  ComplexPtr cur = fx.complex;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    RaySet center = make_ray_set({trace[i].center[0], trace[i].center[1]});
    if (center.size() != 2 || !cur->is_cone(center))
      throw InputError("$.trace[" + std::to_string(i) + "].center", "not a 2-cone of the complex");
    if (cur->has_ray(trace[i].new_ray))
      throw InputError("$.trace[" + std::to_string(i) + "].new", "ray id already in use");
    cur = star_subdivide(cur, center, trace[i].new_ray).refined;
  }
  if (!input.contains("lifted_offsets")) throw InputError("$.lifted_offsets", "missing field");
  PuncturingData lifted = io::parse_offsets(input["lifted_offsets"], cur, "$.lifted_offsets");
  ComparisonReport rep = compare_under_subdivision(fx.complex, fx.offsets, trace, lifted, fx.mode);
  return {{"coarse", io::to_json(rep.coarse)},
          {"primed", io::to_json(rep.primed)},
          {"pushed", io::to_json(rep.pushed)},
          {"difference", io::to_json(rep.difference)},
          {"equal", rep.equal},
          {"trace", trace_json(trace)}};
}

json cmd_positivize(const io::Fixture& fx, const Options& o) {
  const auto& nd = need_numerical(fx);
  require_balanced(nd);
  NumericalData pos = positivize(nd);
  json out{{"input", io::to_json(nd)}, {"positivized", io::to_json(pos)}};
  if (fx.model) {
    EnumerationResult a = enumerate_types(nd, *fx.model, bounds_of(o));
    EnumerationResult b = enumerate_types(pos, positivize_model(nd, *fx.model), bounds_of(o));
    out["types"] = a.types.size();
    out["positivized_types"] = b.types.size();
    out["complete"] = a.complete && b.complete;
    out["counts_agree"] = a.types.size() == b.types.size();
    if (a.types.size() != b.types.size()) throw Finding{Inconsistent, out};
  }
  return out;
}

json cmd_sensitivity(const json& input, const Options& o) {
  io::Fixture fx = io::parse_fixture(input, "$");
  const auto& nd = need_numerical(fx);
  require_balanced(nd);
  Fan fan;
  if (input.contains("fan")) {
    fan = io::parse_fan(input["fan"], nd.k, "$.fan");
  } else {
    std::vector<BlowupStep> steps;
    if (input.contains("blowups")) {
      const json& b = input["blowups"];
      if (!b.is_array()) throw InputError("$.blowups", "expected an array");
      for (std::size_t i = 0; i < b.size(); ++i) {
        BlowupStep s;
        std::string p = "$.blowups[" + std::to_string(i) + "]";
        if (!b[i].is_array()) throw InputError(p, "expected an array");
        for (const auto& x : b[i]) {
          if (!x.is_number_integer() || x.get<long>() < 1) throw InputError(p, "expected divisor indices >= 1");
          s.center.push_back(static_cast<int>(x.get<long>()) - 1);
        }
        std::sort(s.center.begin(), s.center.end());
        steps.push_back(s);
      }
    }
    fan = blowup_fan(nd.k, steps);
  }
  SensitivityReport rep = check_slope_sensitivity(nd, need_model(fx), fan, bounds_of(o));
  json pairs = json::array();
  for (const auto& p : rep.pairs)
    pairs.push_back({{"J", {p.j1 + 1, p.j2 + 1}}, {"slopes", p.slopes}, {"missing", p.missing},
                     {"complete", p.complete}});
  return {{"sensitive", rep.sensitive}, {"complete", rep.complete}, {"pairs", pairs}};
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("--r", "expected a comma separated list of integers");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Refined classes of punctured tropical map moduli", "tropref"};
  app.set_version_flag("--version", std::string(TROPREF_VERSION));
  Options o;
  std::string r_list;
  app.add_option("command", o.command, "Subcommand")
      ->required()
      ->check(CLI::IsMember({"validate", "enumerate", "refined-class", "segre", "twisted-check", "compare-blowup",
                             "positivize", "sensitivity"}));
  app.add_option("input", o.input, "Input JSON file")->required();
  app.add_option("--backend", o.backend, "Segre backend")
      ->check(CLI::IsMember({"resolution", "aluffi-crosscheck"}));
  app.add_option("--max-codim", o.max_codim, "Highest Segre degree")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--trace", o.trace, "Emit the subdivision trace");
  app.add_option("--r", r_list, "Rooting parameters, comma separated");
  app.add_option("--rooting", o.rooting, "Rooting data JSON file");
  app.add_option("--seed", o.seed, "Resolution order seed");
  app.add_option("--max-vertices", o.max_vertices, "Vertex bound when no certificate exists");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os, es;
    int code = app.exit(e, os, es);
    out << os.str();
    err << es.str();
    return code == 0 ? Ok : Malformed;
  }

  std::string bytes;
  json result;
  try {
    if (!r_list.empty()) o.r = parse_list(r_list);
    bytes = slurp(o.input);
    json input = parse_bytes(bytes);
    std::string base_dir = std::filesystem::path(o.input).parent_path().string();
    if (o.command == "compare-blowup") {
      result = cmd_compare_blowup(input, base_dir);
    } else if (o.command == "sensitivity") {
      result = cmd_sensitivity(input, o);
    } else {
      io::Fixture fx = io::parse_fixture(input);
      if (o.command == "validate") {
        result = cmd_validate(fx);
      } else {
        require_valid(fx);
        if (o.command == "enumerate") result = cmd_enumerate(fx, o);
        else if (o.command == "refined-class") result = cmd_refined_class(fx, o);
        else if (o.command == "segre") result = cmd_segre(fx, o);
        else if (o.command == "twisted-check") result = cmd_twisted_check(fx, o, base_dir);
        else if (o.command == "positivize") result = cmd_positivize(fx, o);
      }
    }
  } catch (const InputError& e) {
    err << json{{"error", "malformed input"}, {"path", e.path()}, {"message", e.what()}}.dump() << "\n";
    return Malformed;
  } catch (const Finding& f) {
    out << json{{"command", o.command}, {"version", TROPREF_VERSION}, {"input_digest", sha256_hex(bytes)},
                {"result", f.result}}
               .dump(2)
        << "\n";
    return f.code;
  } catch (const MathError& e) {
    err << json{{"error", "mathematical inconsistency"}, {"message", e.what()}}.dump() << "\n";
    return Inconsistent;
  }
  out << json{{"command", o.command}, {"version", TROPREF_VERSION}, {"input_digest", sha256_hex(bytes)},
              {"result", result}}
             .dump(2)
      << "\n";
  return Ok;
}

}  // namespace tropref::cli
