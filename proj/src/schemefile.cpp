#include "sect/schemefile.hpp"

#include <sstream>

#include "sect/errors.hpp"
#include "sect/ideal.hpp"

namespace sect {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> default_names(int nvars) {
  std::vector<std::string> v;
  for (int i = 0; i < nvars; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

[[noreturn]] void bad(const std::string& what, size_t line) {
  throw ParseError("scheme file: " + what + " at line " + std::to_string(line), line);
}

std::vector<Elem> parse_point(const std::string& text, const RingPtr& F, size_t line) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') bad("expected a point (a:b:c)", line);
  std::vector<Elem> pt;
  std::string body = s.substr(1, s.size() - 2);
  std::istringstream is(body);
  std::string coord;
  while (std::getline(is, coord, ':')) {
    coord = trim(coord);
    try {
      size_t used = 0;
      int64_t v = std::stoll(coord, &used);
      if (used != coord.size()) throw std::invalid_argument(coord);
      pt.push_back(F->from_int(v));
    } catch (const std::exception&) {
      bad("point coordinate '" + coord + "' is not an integer", line);
    }
  }
  if (pt.empty()) bad("empty point", line);
  return pt;
}

}  // namespace

std::vector<std::vector<Elem>> SchemeFile::oq_points() const {
  std::vector<std::vector<Elem>> pts;
  for (const auto& d : oq) pts.push_back(d.point);
  return pts;
}

RingPtr SchemeFile::point_field() const {
  return ring->is_dvr() ? ring->residue_field() : ring;
}

SchemeFile parse_scheme_file(const std::string& text) {
  SchemeFile f;
  bool have_ring = false, have_ambient = false;
  std::istringstream is(text);
  std::string raw;
  size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    auto starts = [&](const std::string& key) {
      return line.rfind(key, 0) == 0;
    };

    if (starts("ring:")) {
      try {
        f.ring = parse_ring(trim(line.substr(5)));
      } catch (const Error& e) {
        bad(e.what(), lineno);
      }
      have_ring = true;
    } else if (starts("ambient:")) {
      std::string v = trim(line.substr(8));
      if (v.size() < 2 || v[0] != 'P') bad("ambient must be P<N>", lineno);
      try {
        f.ambient = std::stoi(v.substr(1));
      } catch (const std::exception&) {
        bad("ambient must be P<N>", lineno);
      }
      if (f.ambient < 1) bad("ambient dimension must be >= 1", lineno);
      have_ambient = true;
      f.model = SchemeModel{f.ring, f.ambient + 1, true, {}, default_names(f.ambient + 1)};
    } else if (starts("eq ") || starts("component ")) {
      bool is_eq = starts("eq ");
      if (!have_ring || !have_ambient) bad("ring and ambient must come first", lineno);
      size_t eqpos = line.find('=');
      if (eqpos == std::string::npos) bad("expected '='", lineno);
      std::string name = trim(line.substr(is_eq ? 3 : 10, eqpos - (is_eq ? 3 : 10)));
      std::string body = trim(line.substr(eqpos + 1));
      if (name.empty()) bad("missing name", lineno);
      RingPtr R = is_eq ? f.ring : f.point_field();
      Poly p;
      try {
        p = parse_poly(body, R, f.model.varnames);
      } catch (const ParseError& e) {
        std::string w = e.what();
        std::string suffix = " at position " + std::to_string(e.position);
        if (w.size() >= suffix.size() && w.ends_with(suffix)) w.resize(w.size() - suffix.size());
        throw ParseError("scheme file line " + std::to_string(lineno) + ": " + w, e.position);
      }
      if (is_eq) {
        f.eq_names.push_back(name);
        f.eq_texts.push_back(body);
        f.model.gens.push_back(p);
      } else {
        f.component_names.push_back(name);
        f.component_texts.push_back(body);
        f.components.push_back(SchemeModel{R, f.ambient + 1, true, {p}, f.model.varnames});
      }
    } else if (starts("oq at ")) {
      if (!have_ring || !have_ambient) bad("ring and ambient must come first", lineno);
      size_t exp = line.find(" expect ");
      if (exp == std::string::npos) bad("expected 'expect case=...'", lineno);
      OqDecl d;
      d.point = parse_point(line.substr(6, exp - 6), f.point_field(), lineno);
      if ((int)d.point.size() != f.ambient + 1) bad("point arity mismatch", lineno);
      std::istringstream rest(line.substr(exp + 8));
      std::string tok;
      bool have_case = false;
      while (rest >> tok) {
        if (tok == "case=i") {
          d.oq_case = OqCase::NonDegenerate;
          have_case = true;
        } else if (tok == "case=ii") {
          d.oq_case = OqCase::DegenerateChar2;
          have_case = true;
        } else if (tok.rfind("order=", 0) == 0) {
          try {
            d.order = std::stoi(tok.substr(6));
          } catch (const std::exception&) {
            bad("order must be an integer", lineno);
          }
        } else {
          bad("unknown token '" + tok + "'", lineno);
        }
      }
      if (!have_case) bad("missing case=i|ii", lineno);
      f.oq.push_back(std::move(d));
    } else if (starts("proper:")) {
      std::string v = trim(line.substr(7));
      if (v != "true" && v != "false") bad("proper must be true or false", lineno);
      f.proper = v == "true";
    } else if (starts("budget ")) {
      std::string v = trim(line.substr(7));
      auto set = [&](const std::string& key, auto& slot) {
        if (v.rfind(key + "=", 0) != 0) return false;
        try {
          slot = std::stoll(v.substr(key.size() + 1));
        } catch (const std::exception&) {
          bad("budget value must be an integer", lineno);
        }
        return true;
      };
      int64_t ext = -1, jet = -1;
      if (set("points", f.budget_points)) {
      } else if (set("ext", ext)) {
        f.ext_bound = (int)ext;
      } else if (set("jet", jet)) {
        f.jet_bound = (int)jet;
      } else {
        bad("unknown budget '" + v + "'", lineno);
      }
    } else {
      bad("unknown directive '" + line.substr(0, line.find(' ')) + "'", lineno);
    }
  }
  if (!have_ring) bad("missing ring", lineno + 1);
  if (!have_ambient) bad("missing ambient", lineno + 1);
  if (f.model.gens.empty()) bad("missing defining equation", lineno + 1);
  return f;
}

std::string print_scheme_file(const SchemeFile& f) {
  std::ostringstream os;
  os << "ring: " << f.ring->descriptor() << "\n";
  os << "ambient: P" << f.ambient << "\n";
  for (size_t i = 0; i < f.eq_names.size(); ++i)
    os << "eq " << f.eq_names[i] << " = " << f.eq_texts[i] << "\n";
  for (size_t i = 0; i < f.component_names.size(); ++i)
    os << "component " << f.component_names[i] << " = " << f.component_texts[i] << "\n";
  RingPtr F = f.point_field();
  for (const auto& d : f.oq) {
    os << "oq at " << point_to_string(F, d.point, true) << " expect case="
       << (d.oq_case == OqCase::NonDegenerate ? "i" : "ii");
    if (d.order) os << " order=" << *d.order;
    os << "\n";
  }
  os << "proper: " << (f.proper ? "true" : "false") << "\n";
  os << "budget points=" << f.budget_points << "\n";
  os << "budget ext=" << f.ext_bound << "\n";
  os << "budget jet=" << f.jet_bound << "\n";
  return os.str();
}

void verify_scheme_file(const SchemeFile& f) {
  if (!f.components.empty()) {
    if (f.ring->is_dvr()) {
      // smoothness and exact support agreement with the special fibre
      load_stratified(f.model, f.components, f.proper, f.budget_points);
    } else {
      for (size_t i = 0; i < f.components.size(); ++i) {
        auto cert = is_smooth(f.components[i], CheckMode::Groebner, f.ext_bound, f.budget_points);
        if (!cert.ok())
          throw ChartInconsistency("component " + f.component_names[i] + " is not smooth");
      }
    }
  }
  for (const auto& d : f.oq) {
    std::string where = point_to_string(f.point_field(), d.point, true);
    auto v = classify_point(f.model, d.point, f.jet_bound);
    if (!v.is_oq())
      throw ChartInconsistency("declared point " + where + " is not ordinary quadratic" +
                               (v.reason.empty() ? "" : " (" + v.reason + ")"));
    if (v.model->oq_case != d.oq_case)
      throw ChartInconsistency("declared point " + where + ": case mismatch");
    if (d.order) {
      if (!f.ring->is_dvr())
        throw ChartInconsistency("declared point " + where + ": order given for a field model");
      if (v.model->order() != *d.order)
        throw ChartInconsistency("declared point " + where + ": expected order " +
                                 std::to_string(*d.order) + ", classified order " +
                                 std::to_string(v.model->order()));
    }
  }
}

SchemeFile load_scheme_file(const std::string& text) {
  SchemeFile f = parse_scheme_file(text);
  verify_scheme_file(f);
  return f;
}

}  // namespace sect
