#include "sect/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sect/blowup.hpp"
#include "sect/lefschetz.hpp"
#include "sect/schemefile.hpp"

namespace sect {

namespace {

struct Report {
  std::vector<std::pair<std::string, std::string>> kv;
  void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
  void emit(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      nlohmann::ordered_json j;
      for (const auto& [k, v] : kv) j[k] = v;
      out << j.dump(2) << "\n";
    } else {
      for (const auto& [k, v] : kv) out << k << ": " << v << "\n";
    }
  }
};

CheckMode mode_of(const std::string& s) {
  if (s == "groebner") return CheckMode::Groebner;
  if (s == "enumeration") return CheckMode::Enumeration;
  return CheckMode::Both;
}

SchemeFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scheme_file(ss.str());
}

void echo_model(Report& r, const std::string& path, const SchemeFile& f) {
  r.add("model", path);
  r.add("ring", f.ring->descriptor());
  std::string eqs;
  for (size_t i = 0; i < f.eq_texts.size(); ++i)
    eqs += (i ? "; " : "") + f.eq_names[i] + " = " + f.eq_texts[i];
  r.add("equations", eqs);
}

std::vector<Elem> parse_cli_point(const std::string& text, const RingPtr& F, int nvars) {
  std::string s = text;
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw ParseError("point must look like (0:0:1)", 0);
  std::vector<Elem> pt;
  std::istringstream is(s.substr(1, s.size() - 2));
  std::string coord;
  while (std::getline(is, coord, ':')) {
    try {
      pt.push_back(F->from_int(std::stoll(coord)));
    } catch (const std::exception&) {
      throw ParseError("point coordinate '" + coord + "' is not an integer", 0);
    }
  }
  if ((int)pt.size() != nvars) throw ParseError("point has the wrong number of coordinates", 0);
  return pt;
}

/// `oq(case=i, n=1, Q=x1*x2, c=pi^2)`; case ii adds `b=`, `c` defaults to 0.
LocalModel parse_model_literal(const std::string& text, const RingPtr& ring) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.rfind("oq(", 0) != 0 || s.back() != ')')
    throw ParseError("model literal must look like oq(case=i,n=1,Q=x1*x2,c=pi^2)", 0);
  std::map<std::string, std::string> kv;
  std::istringstream is(s.substr(3, s.size() - 4));
  std::string item;
  while (std::getline(is, item, ',')) {
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in '" + item + "'", 0);
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  if (!kv.count("case") || !kv.count("n") || !kv.count("Q"))
    throw ParseError("model literal needs case, n and Q", 0);
  OqCase oc;
  if (kv["case"] == "i") oc = OqCase::NonDegenerate;
  else if (kv["case"] == "ii") oc = OqCase::DegenerateChar2;
  else throw ParseError("case must be i or ii", 0);
  int n;
  try {
    n = std::stoi(kv["n"]);
  } catch (const std::exception&) {
    throw ParseError("n must be an integer", 0);
  }
  std::vector<std::string> names;
  for (int i = 1; i <= n + 1; ++i) names.push_back("x" + std::to_string(i));
  Poly Q = parse_poly(kv["Q"], ring, names);
  auto scalar = [&](const std::string& key) {
    if (!kv.count(key)) return ring->zero();
    Poly p = parse_poly(kv[key], ring, names);
    if (!p.is_constant()) throw ParseError(key + " must be a ring constant", 0);
    return p.constant_term();
  };
  return make_local_model(ring, oc, n, Q, scalar("b"), scalar("c"));
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string describe_verdict(const SingularityVerdict& v, bool dvr) {
  switch (v.kind) {
    case SingularityVerdict::Kind::Smooth: return "Smooth";
    case SingularityVerdict::Kind::OrdinaryQuadratic: {
      std::string s = "OrdinaryQuadratic case=";
      s += v.model->oq_case == OqCase::NonDegenerate ? "i" : "ii";
      if (dvr) {
        try {
          s += " order=" + std::to_string(v.model->order());
        } catch (const PrecisionExhausted&) {
          s += " order=unresolved";
        }
      }
      return s;
    }
    case SingularityVerdict::Kind::NotOrdinary: return "NotOrdinary (" + v.reason + ")";
    default: return "Undecidable (" + v.reason + ")";
  }
}

int cmd_check_smooth(Report& r, const SchemeFile& f, CheckMode mode, int ext_bound,
                     int64_t budget) {
  if (f.ring->is_field()) {
    auto cert = is_smooth(f.model, mode, ext_bound, budget);
    r.add("smooth", yesno(cert.ok()));
    if (!cert.ok()) r.add("obstruction", cert.report());
    return cert.ok() ? 0 : 1;
  }
  auto fib = is_smooth(f.model.reduce_mod_pi(), mode, ext_bound, budget);
  r.add("special-fibre", yesno(fib.ok()));
  bool ok = fib.ok();
  if (f.proper) {
    r.add("generic-fibre", "skipped (proper model)");
  } else {
    std::string obs = generic_fibre_obstruction(f.model, mode, ext_bound, budget);
    r.add("generic-fibre", obs.empty() ? "ok" : obs);
    ok = ok && obs.empty();
  }
  r.add("smooth", yesno(ok));
  return ok ? 0 : 1;
}

int cmd_classify(Report& r, const SchemeFile& f, const std::string& point_text, int jet) {
  auto pt = parse_cli_point(point_text, f.point_field(), f.ambient + 1);
  r.add("point", point_to_string(f.point_field(), pt, true));
  auto v = classify_point(f.model, pt, jet);
  r.add("verdict", describe_verdict(v, f.ring->is_dvr()));
  if (v.kind == SingularityVerdict::Kind::Undecidable) return 2;
  return v.kind == SingularityVerdict::Kind::NotOrdinary ? 1 : 0;
}

int cmd_resolve(Report& r, const std::string& literal, const RingPtr& ring, CheckMode mode) {
  r.add("ring", ring->descriptor());
  r.add("model", literal);
  LocalModel m = parse_model_literal(literal, ring);
  try {
    Resolution res = resolve(m, mode);
    std::ostringstream v;
    v << res.steps.size() << (res.steps.size() == 1 ? " blow-up" : " blow-ups")
      << "; terminal " << (res.semistable ? "SemiStable" : "NotSemiStable");
    r.add("steps", std::to_string(res.steps.size()));
    r.add("verdict", v.str());
    return res.semistable ? 0 : 1;
  } catch (const NonTermination& e) {
    r.add("verdict", std::string("non-termination: ") + e.what());
    return 1;
  }
}

int cmd_find_hyperplane(Report& r, const SchemeFile& f, int ell, int max_ext, CheckMode mode,
                        int d, bool have_seed, uint64_t seed, int sample) {
  if (d == 1) {
    if (!f.ring->is_dvr()) throw Unsupported("hyperplane search needs a DVR model");
    StratifiedModel sm = load_stratified(f.model, f.components, f.proper, f.budget_points);
    auto res = find_good_hyperplane(sm, ell, max_ext, mode, f.budget_points);
    r.add("found", yesno(res.found));
    if (res.found) {
      r.add("hyperplane", res.best.to_poly().to_string(f.model.varnames));
      r.add("ext-degree", std::to_string(res.ext_degree));
      r.add("good-count", std::to_string(res.good_locus.size()));
    }
    std::ostringstream sc;
    for (size_t i = 0; i < res.scanned.size(); ++i)
      sc << (i ? " " : "") << res.scanned[i].first << ":" << res.scanned[i].second;
    r.add("scanned", sc.str());
    return res.found ? 0 : 1;
  }
  // degree-d forms over the (special fibre of the) model
  SchemeModel X = f.ring->is_dvr() ? f.model.reduce_mod_pi() : f.model;
  double total = 1;
  for (size_t i = 0; i < degree_monomials(X.nvars, d).size(); ++i) total *= (double)X.ring->size();
  bool sampling = total - 1 > (double)f.budget_points;
  if (sampling && !have_seed)
    throw Error("candidate space exceeds the budget; sampling requires --seed");
  auto res = find_good_hypersurface(X, d, f.components, f.budget_points,
                                    have_seed ? seed : 1, sample);
  r.add("found", yesno(res.found));
  if (res.found) r.add("form", res.form.to_string(f.model.varnames));
  r.add("exhaustive", yesno(res.exhaustive));
  r.add("scanned", std::to_string(res.scanned));
  return res.found ? 0 : 1;
}

int cmd_find_pencil(Report& r, const SchemeFile& f, int d, int ell, int max_ext, int ext_bound,
                    int64_t candidate_budget) {
  PencilSearch res;
  if (f.ring->is_dvr()) {
    StratifiedModel sm = load_stratified(f.model, f.components, f.proper, f.budget_points);
    res = find_pencil_dvr(sm, d, ell, max_ext, f.oq_points(), ext_bound, candidate_budget,
                          f.budget_points);
  } else {
    res = find_pencil(f.model, d, ell, max_ext, f.oq_points(), ext_bound, candidate_budget,
                      f.budget_points);
  }
  r.add("found", yesno(res.found));
  if (res.found) {
    r.add("f0", res.pencil.f0.to_string(f.model.varnames));
    r.add("finf", res.pencil.finf.to_string(f.model.varnames));
    r.add("ext-degree", std::to_string(res.ext_degree));
    r.add("sigma", std::to_string(res.report->sigma.size()));
  }
  std::ostringstream sc;
  for (size_t i = 0; i < res.scanned.size(); ++i)
    sc << (i ? " " : "") << res.scanned[i].first << ":" << res.scanned[i].second;
  r.add("scanned", sc.str());
  if (!res.note.empty()) r.add("note", res.note);
  return res.found ? 0 : 1;
}

int cmd_verify_pencil(Report& r, const SchemeFile& f, const std::string& f0_text,
                      const std::string& finf_text, int ext_bound) {
  bool dvr = f.ring->is_dvr();
  SchemeModel X = dvr ? f.model.reduce_mod_pi() : f.model;
  Poly f0 = parse_poly(f0_text, X.ring, f.model.varnames);
  Poly finf = parse_poly(finf_text, X.ring, f.model.varnames);
  r.add("f0", f0_text);
  r.add("finf", finf_text);
  if (dvr) r.add("route", "special fibre");
  int d = f0.degree();
  auto p = make_pencil(d, f0, finf);
  auto rep = is_lefschetz(X, p, f.oq_points(), ext_bound, f.budget_points);
  r.add("lefschetz", yesno(rep.lefschetz));
  if (!rep.failure.empty()) r.add("failure", rep.failure);
  r.add("sigma", std::to_string(rep.sigma.size()));
  r.add("members-scanned", std::to_string(rep.members_scanned));
  return rep.lefschetz ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact hyperplane sections, singularity classification and Lefschetz pencils"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));

  std::string model_path, point_text, literal, ring_text, f0_text, finf_text;
  std::string mode_text = "groebner";
  int ell = 2, max_ext_h = 2, max_ext_p = 0, ext_bound = 0, jet = 0, d = 1, sample = 2000;
  int64_t candidate_budget = 100000;
  uint64_t seed = 0;
  bool have_seed = false;

  auto* smooth = app.add_subcommand("check-smooth", "smoothness of the model");
  smooth->fallthrough();
  smooth->add_option("--model", model_path, "scheme file")->required();
  smooth->add_option("--mode", mode_text)->check(CLI::IsMember({"groebner", "enumeration", "both"}));
  smooth->add_option("--ext-bound", ext_bound);

  auto* classify = app.add_subcommand("classify", "classify a special-fibre point");
  classify->fallthrough();
  classify->add_option("--model", model_path)->required();
  classify->add_option("--point", point_text, "projective point (0:0:1)")->required();
  classify->add_option("--jet", jet);

  auto* resolve_cmd = app.add_subcommand("resolve", "iterated blow-up of a local model");
  resolve_cmd->fallthrough();
  resolve_cmd->add_option("literal", literal, "oq(case=i,n=1,Q=x1*x2,c=pi^2)")->required();
  resolve_cmd->add_option("--ring", ring_text)->required();
  resolve_cmd->add_option("--mode", mode_text)
      ->check(CLI::IsMember({"groebner", "enumeration", "both"}));

  auto* findh = app.add_subcommand("find-hyperplane", "good hyperplane / hypersurface search");
  findh->fallthrough();
  findh->add_option("--model", model_path)->required();
  findh->add_option("--ell", ell);
  findh->add_option("--max-ext", max_ext_h);
  findh->add_option("--d", d);
  findh->add_option("--mode", mode_text)->check(CLI::IsMember({"groebner", "enumeration", "both"}));
  findh->add_option("--sample", sample);
  findh->add_option("--seed", seed)->each([&](const std::string&) { have_seed = true; });

  auto* findp = app.add_subcommand("find-pencil", "Lefschetz pencil search");
  findp->fallthrough();
  findp->add_option("--model", model_path)->required();
  findp->add_option("--d", d);
  findp->add_option("--ell", ell);
  findp->add_option("--max-ext", max_ext_p);
  findp->add_option("--ext-bound", ext_bound);
  findp->add_option("--candidate-budget", candidate_budget);

  auto* verifyp = app.add_subcommand("verify-pencil", "verify a declared pencil");
  verifyp->fallthrough();
  verifyp->add_option("--model", model_path)->required();
  verifyp->add_option("--f0", f0_text)->required();
  verifyp->add_option("--finf", finf_text)->required();
  verifyp->add_option("--ext-bound", ext_bound);

  std::vector<const char*> argv{"sect"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  Report r;
  try {
    int rc = 3;
    if (app.got_subcommand(resolve_cmd)) {
      r.add("command", "resolve");
      rc = cmd_resolve(r, literal, parse_ring(ring_text), mode_of(mode_text));
    } else {
      SchemeFile f = load_model(model_path);
      if (ext_bound <= 0) ext_bound = f.ext_bound;
      if (jet <= 0) jet = f.jet_bound;
      if (app.got_subcommand(smooth)) {
        r.add("command", "check-smooth");
        echo_model(r, model_path, f);
        rc = cmd_check_smooth(r, f, mode_of(mode_text), ext_bound, f.budget_points);
      } else if (app.got_subcommand(classify)) {
        r.add("command", "classify");
        echo_model(r, model_path, f);
        rc = cmd_classify(r, f, point_text, jet);
      } else if (app.got_subcommand(findh)) {
        r.add("command", "find-hyperplane");
        echo_model(r, model_path, f);
        rc = cmd_find_hyperplane(r, f, ell, max_ext_h, mode_of(mode_text), d, have_seed, seed,
                                 sample);
      } else if (app.got_subcommand(findp)) {
        r.add("command", "find-pencil");
        echo_model(r, model_path, f);
        rc = cmd_find_pencil(r, f, d, ell, max_ext_p, ext_bound, candidate_budget);
      } else if (app.got_subcommand(verifyp)) {
        r.add("command", "verify-pencil");
        echo_model(r, model_path, f);
        rc = cmd_verify_pencil(r, f, f0_text, finf_text, ext_bound);
      }
    }
    r.emit(out, format);
    return rc;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    err << "undecidable: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionExhausted& e) {
    err << "undecidable: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    err << "undecidable: " << e.what() << "\n";
    return 2;
  } catch (const OracleDisagreement& e) {
    err << "undecidable: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace sect
