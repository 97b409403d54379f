#include <barkfib/barkfib.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef BARKFIB_FIXTURE_DIR
#define BARKFIB_FIXTURE_DIR "fixtures"
#endif

using namespace barkfib;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kNoClass = 3 };

struct Output {
  bool as_json = false;

  void emit(json j) const {
    j["schema"] = kSchema;
    std::cout << j.dump() << "\n";
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

FiberMultiset parse_parts(const std::string& s) {
  FiberMultiset ms;
  for (const auto& t : split(s, ',')) ms.push_back(parse_fiber(t));
  if (ms.empty()) throw std::invalid_argument("no parts given");
  return ms;
}

Mat2 parse_mat(const std::string& s) {
  auto toks = split(s, ',');
  if (toks.size() != 4) throw std::invalid_argument("--mat needs four comma-separated integers");
  Int v[4];
  for (int i = 0; i < 4; ++i) {
    std::size_t used = 0;
    try {
      v[i] = std::stoll(toks[static_cast<std::size_t>(i)], &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad matrix entry '" + toks[static_cast<std::size_t>(i)] + "'");
    }
    if (used != toks[static_cast<std::size_t>(i)].size())
      throw std::invalid_argument("bad matrix entry '" + toks[static_cast<std::size_t>(i)] + "'");
  }
  return Mat2(v[0], v[1], v[2], v[3]);
}

std::string fixture_path(const std::string& given, const std::string& name) {
  return given.empty() ? std::string(BARKFIB_FIXTURE_DIR) + "/" + name : given;
}

int cmd_classify(const Output& out, const std::string& mat, const std::string& word) {
  if (mat.empty() == word.empty()) throw std::invalid_argument("give exactly one of --mat or --word");
  const Mat2 m = mat.empty() ? eval_word(parse_word(word)) : parse_mat(mat);
  auto cls = classify(m);
  if (out.as_json) {
    out.emit({{"command", "classify"},
              {"matrix", to_json(m)},
              {"trace", trace(m)},
              {"class", cls ? json(cls->str()) : json(nullptr)}});
  } else {
    std::cout << (cls ? cls->str() : "none") << "\n";
  }
  return cls ? kOk : kNoClass;
}

int cmd_euler(const Output& out, const std::vector<std::string>& fibers, const std::string& main) {
  if (!main.empty()) {
    if (fibers.size() != 1) throw std::invalid_argument("--main needs exactly one original fiber");
    const auto orig = parse_fiber(fibers.front()), mf = parse_fiber(main);
    const int d = euler_deficit(orig, mf);
    std::vector<FiberMultiset> cands;
    if (d > 0) cands = enumerate_multisets(d);
    if (out.as_json) {
      json cj = json::array();
      for (const auto& c : cands) cj.push_back(to_json(c));
      out.emit({{"command", "euler"}, {"original", orig.str()}, {"main", mf.str()}, {"deficit", d}, {"candidates", cj}});
    } else {
      std::cout << "deficit " << d << "\n";
      for (const auto& c : cands) std::cout << "  " << multiset_str(c) << "\n";
    }
    return kOk;
  }
  json rows = json::array();
  for (const auto& s : fibers) {
    const auto f = parse_fiber(s);
    const Mat2 m = standard_monodromy(f);
    if (out.as_json)
      rows.push_back({{"fiber", f.str()},
                      {"euler", euler(f)},
                      {"word", standard_word(f).str()},
                      {"monodromy", to_json(m)},
                      {"trace", trace(m)}});
    else
      std::cout << f.str() << "\te=" << euler(f) << "\ttr=" << trace(m) << "\t" << m.str() << "\t"
                << standard_word(f).str() << "\n";
  }
  if (out.as_json) out.emit({{"command", "euler"}, {"fibers", rows}});
  return kOk;
}

int cmd_factorize(const Output& out, const std::string& target, const std::string& parts, const SearchOptions& opt,
                  const std::string& archive) {
  const auto t = parse_fiber(target);
  const auto ps = parse_parts(parts);
  std::optional<FactorizationWitness> w;
  std::string error;
  try {
    w = search_factorization(t, ps, opt);
  } catch (const SearchBudgetExceeded& e) {
    error = e.what();
  }
  if (w && !archive.empty()) {
    json arch = json::object();
    {
      std::ifstream in(archive);
      if (in) arch = json::parse(in);
    }
    if (!arch.contains("witnesses")) arch["witnesses"] = json::array();
    arch["schema"] = kSchema;
    json entry = to_json(*w);
    bool dup = false;
    for (const auto& e : arch["witnesses"]) dup = dup || e == entry;
    if (!dup) arch["witnesses"].push_back(entry);
    std::ofstream(archive) << arch.dump(1) << "\n";
  }
  if (out.as_json) {
    json j{{"command", "factorize"}, {"target", t.str()}, {"parts", to_json(canonical(ps))}};
    j["witness"] = w ? to_json(*w) : json(nullptr);
    if (w) j["verified"] = verify_witness(*w);
    if (!error.empty()) j["error"] = error;
    out.emit(j);
  } else if (w) {
    std::cout << w->str() << "\n";
  } else {
    std::cout << "no witness within bounds" << (error.empty() ? "" : " (" + error + ")") << "\n";
  }
  return w ? kOk : kNoClass;
}

int cmd_verify_archive(const Output& out, const std::string& path) {
  const json arch = load_json_file(path);
  int bad = 0;
  json rows = json::array();
  for (const auto& e : arch.at("witnesses")) {
    const auto w = witness_from_json(e);
    const bool ok = verify_witness(w);
    bad += ok ? 0 : 1;
    if (out.as_json)
      rows.push_back({{"witness", w.str()}, {"ok", ok}});
    else
      std::cout << (ok ? "PASS  " : "FAIL  ") << w.str() << "\n";
  }
  if (out.as_json) out.emit({{"command", "factorize"}, {"archive", path}, {"results", rows}, {"failures", bad}});
  return bad ? kMismatch : kOk;
}

int cmd_obstruct(const Output& out, const std::string& target, const std::string& parts) {
  const auto t = parse_fiber(target);
  const auto ps = canonical(parse_parts(parts));
  const auto rs = applicable_obstructions(t, ps);
  const bool forbidden = is_forbidden(rs);
  if (out.as_json) {
    json rj = json::array();
    for (const auto& r : rs) rj.push_back(to_json(r));
    out.emit({{"command", "obstruct"},
              {"target", t.str()},
              {"parts", to_json(ps)},
              {"verdict", verdict_str(forbidden ? Verdict::Forbidden : Verdict::Undecided)},
              {"results", rj}});
  } else {
    std::cout << t.str() << " -> " << multiset_str(ps) << ": " << (forbidden ? "forbidden" : "undecided") << "\n";
    for (const auto& r : rs) std::cout << "  " << verdict_str(r.verdict) << "  " << r.rule << ": " << r.detail << "\n";
    if (rs.empty()) std::cout << "  no obstruction applies\n";
  }
  return kOk;
}

StellarFiber stellar_arg(const std::string& fiber, const std::string& stellar_json, const std::string& fixture) {
  if (!stellar_json.empty()) return stellar_from_json(json::parse(stellar_json), "custom");
  if (fiber.empty()) throw std::invalid_argument("give --fiber or --stellar");
  const auto fx = load_fixture(fixture);
  auto it = fx.stellar.find(fiber);
  if (it == fx.stellar.end()) throw std::invalid_argument("no stellar model for '" + fiber + "'");
  return it->second;
}

int cmd_crusts(const Output& out, const StellarFiber& x, Int l) {
  if (auto errs = validate_stellar(x); !errs.empty()) throw std::invalid_argument(errs.front());
  const auto cs = enumerate_simple_crusts(x, l);
  json rows = json::array();
  for (const auto& y : cs) {
    json row = to_json(y);
    json types = json::array();
    for (std::size_t j = 0; j < x.num_branches(); ++j) {
      auto sb = y.subbranch(x, j);
      std::string t;
      for (auto ty : classify_subbranch(sb, l)) t += subbranch_type_str(ty);
      if (is_proportional(sb)) t += "p";
      types.push_back(t);
    }
    row["types"] = types;
    row["zero_degree"] = core_section_exists(x, y.n0, y.first_values()).zero_degree;
    if (out.as_json) {
      rows.push_back(row);
    } else {
      std::cout << "n0=" << y.n0;
      for (std::size_t j = 0; j < y.subbranches.size(); ++j) {
        std::cout << "  [";
        for (std::size_t i = 0; i < y.subbranches[j].size(); ++i) std::cout << (i ? "," : "") << y.subbranches[j][i];
        std::cout << "]" << row["types"][j].get<std::string>();
      }
      std::cout << "  deg D=" << row["zero_degree"] << "\n";
    }
  }
  if (out.as_json) out.emit({{"command", "crusts"}, {"fiber", to_json(x)}, {"l", l}, {"crusts", rows}});
  return kOk;
}

int cmd_predict(const Output& out, const std::string& fixture, const std::string& case_id, const std::string& fiber,
                const std::string& stellar_json, const std::string& crust_json) {
  StellarFiber x;
  SimpleCrust y;
  if (!case_id.empty()) {
    const auto fx = load_fixture(fixture);
    auto it = std::find_if(fx.cases.begin(), fx.cases.end(), [&](const auto& c) { return c.id == case_id; });
    if (it == fx.cases.end()) throw std::invalid_argument("unknown case '" + case_id + "'");
    if (!it->crust) throw std::invalid_argument("case '" + case_id + "' has no crust data");
    x = it->crust->fiber;
    y = it->crust->crust;
  } else {
    if (crust_json.empty()) throw std::invalid_argument("give --case or --crust");
    x = stellar_arg(fiber, stellar_json, fixture);
    y = crust_from_json(json::parse(crust_json));
  }
  try {
    const auto p = predict_counts(x, y);
    if (out.as_json)
      out.emit({{"command", "predict"}, {"fiber", to_json(x)}, {"crust", to_json(y)}, {"profile", to_json(p)}});
    else
      std::cout << p.num_fibers << " subordinate fiber(s) x " << p.sings_per_fiber << " singularity(ies), "
                << location_str(p.location) << " (" << basis_str(p.basis) << ")\n";
    return kOk;
  } catch (const HypothesisViolation& e) {
    // fall back to inequality bounds from the core invariant
    const auto cs = core_section_exists(x, y.n0, y.first_values());
    CoreInvariantInput in;
    in.h = static_cast<int>(x.num_branches());
    for (std::size_t j = 0; j < x.num_branches(); ++j)
      if (is_proportional(y.subbranch(x, j))) {
        ++in.v;
        in.ord_terms.push_back(0);
      }
    // k <= deg D and ord terms >= 0, so this chi is an upper bound
    in.k = static_cast<int>(cs.zero_degree);
    in.g0 = x.core_genus;
    const auto [fmax, smax] = count_bounds(in, x.core_mult, y.n0);
    if (out.as_json)
      out.emit({{"command", "predict"},
                {"hypothesis_failed", e.condition()},
                {"message", e.what()},
                {"bounds", {{"max_fibers", fmax}, {"max_sings_each", smax}, {"chi_upper_bound", core_invariant(in)}}}});
    else
      std::cout << "hypothesis failed: " << e.what() << "\nbounds: <= "
                << fmax << " fibers, <= " << smax << " singularities each\n";
    return kNoClass;
  }
}

LocalCurveSpec local_spec_from_json(const json& j) {
  LocalCurveSpec sp;
  auto cval = [](const json& v) { return v.is_string() ? parse_complex(v.get<std::string>()) : cplx(v.get<double>()); };
  sp.m = j.at("m").get<int>();
  sp.n = j.at("n").get<int>();
  sp.l = j.value("l", 1);
  sp.mp = j.value("mp", 0);
  sp.np = j.value("np", 0);
  if (j.contains("t")) sp.t = cval(j.at("t"));
  if (j.contains("c")) sp.c = cval(j.at("c"));
  if (j.contains("c1")) sp.c1 = cval(j.at("c1"));
  sp.d = j.value("d", 1);
  sp.p = j.value("p", 1);
  sp.pp = j.value("pp", 2);
  validate_local_spec(sp);
  return sp;
}

int cmd_localcheck(const Output& out, const std::string& spec_json) {
  const auto sp = local_spec_from_json(json::parse(spec_json));
  const auto svals = singular_s_values(sp);
  json rows = json::array();
  bool ok = true;
  for (cplx s : svals) {
    json pts = json::array();
    try {
      auto ps = singular_points(sp, s);
      ok = ok && static_cast<int>(ps.size()) == sp.g();
      for (const auto& p : ps)
        pts.push_back({{"z", to_json(p.z)},
                       {"zeta", to_json(p.zeta)},
                       {"residuals", {p.residual_f, p.residual_fz, p.residual_fzeta}},
                       {"type", sing_type_str(local_sing_type(sp, p.z, p.zeta, s))}});
    } catch (const VerificationFailure& e) {
      ok = false;
      for (const auto& p : e.points)
        pts.push_back({{"z", to_json(p.z)},
                       {"zeta", to_json(p.zeta)},
                       {"residuals", {p.residual_f, p.residual_fz, p.residual_fzeta}},
                       {"error", e.what()}});
    }
    rows.push_back({{"s", to_json(s)}, {"points", pts}});
  }
  ok = ok && static_cast<int>(svals.size()) == sp.nbar();
  if (out.as_json) {
    out.emit({{"command", "localcheck"},
              {"nbar", sp.nbar()},
              {"gcd", sp.g()},
              {"s_values", rows},
              {"ok", ok}});
  } else {
    std::cout << "nbar=" << sp.nbar() << " gcd=" << sp.g() << "\n";
    for (const auto& r : rows) {
      std::cout << "s=" << r["s"].get<std::string>() << "\n";
      for (const auto& p : r["points"])
        std::cout << "  zeta=" << p["zeta"].get<std::string>() << "  |F|=" << p["residuals"][0]
                  << " |Fz|=" << p["residuals"][1] << " |Fzeta|=" << p["residuals"][2]
                  << (p.contains("type") ? "  " + p["type"].get<std::string>() : "") << "\n";
    }
    std::cout << (ok ? "ok" : "FAILED") << "\n";
  }
  return ok ? kOk : kMismatch;
}

int cmd_report(const Output& out, const std::string& fixture, const std::string& case_id) {
  const auto fx = load_fixture(fixture);
  int mismatches = 0, seen = 0;
  for (const auto& c : fx.cases) {
    if (!case_id.empty() && c.id != case_id && c.id.rfind(case_id + "[", 0) != 0) continue;
    ++seen;
    auto r = full_report(c.original, c.main, c.crust);
    r.id = c.id;
    const bool match = r.determined == c.expected;
    mismatches += match ? 0 : 1;
    if (out.as_json) {
      json j = to_json(r);
      j["matches_expected"] = match;
      if (!match) {
        json ex = json::array();
        for (const auto& e : c.expected) ex.push_back(to_json(e));
        j["expected"] = ex;
      }
      if (!c.note.empty()) j["note"] = c.note;
      out.emit(j);
    } else {
      std::cout << "(" << c.id << ") " << c.original.str() << " -> " << c.main.str() << " with ";
      for (std::size_t i = 0; i < r.determined.size(); ++i)
        std::cout << (i ? " or " : "") << multiset_str(r.determined[i]);
      std::cout << (r.ambiguous() ? "  [ambiguous]" : "") << (match ? "" : "  MISMATCH") << "\n";
      for (const auto& e : r.evidence) std::cout << "    " << e << "\n";
      for (const auto& cd : r.candidates)
        if (cd.excluded)
          std::cout << "    excluded " << multiset_str(cd.candidate) << " (" << cd.basis << ": " << cd.notes.front()
                    << ")\n";
      if (!match) {
        std::cout << "    expected:";
        for (const auto& e : c.expected) std::cout << " {" << multiset_str(e) << "}";
        std::cout << "\n";
      }
    }
  }
  if (seen == 0) throw std::invalid_argument("no case matches '" + case_id + "'");
  if (!out.as_json) std::cout << seen - mismatches << "/" << seen << " cases match\n";
  return mismatches ? kMismatch : kOk;
}

int cmd_verify_words(const Output& out, int corrupt) {
  auto ids = splittability_identities();
  if (corrupt >= 0) {
    if (corrupt >= static_cast<int>(ids.size())) throw std::invalid_argument("--corrupt index out of range");
    auto& w = ids[static_cast<std::size_t>(corrupt)].witness;
    w.factors.front().conjugator *= Word::of(Gen::S0);
  }
  int bad = 0;
  json rows = json::array();
  for (const auto& id : ids) {
    const bool ok = verify_witness(id.witness);
    bad += ok ? 0 : 1;
    if (out.as_json)
      rows.push_back({{"name", id.name}, {"witness", to_json(id.witness)}, {"ok", ok}});
    else
      std::cout << (ok ? "PASS  " : "FAIL  ") << id.witness.str() << "\n";
  }
  if (out.as_json)
    out.emit({{"command", "verify-words"}, {"results", rows}, {"total", ids.size()}, {"failures", bad}});
  else
    std::cout << ids.size() - static_cast<std::size_t>(bad) << "/" << ids.size() << " identities verified\n";
  return bad ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"barkfib: Kodaira fibers, monodromy splittings and barking deformations"};
  app.require_subcommand(1);
  Output out;
  bool text = false;
  auto add_format = [&](CLI::App* sub) {
    sub->add_flag("--json", out.as_json, "JSON output");
    sub->add_flag("--text", text, "plain text output (default)");
  };

  std::string mat, word;
  auto* classify_cmd = app.add_subcommand("classify", "Kodaira class of a matrix or word");
  classify_cmd->add_option("--mat", mat, "a,b,c,d");
  classify_cmd->add_option("--word", word, "word in s0, s2, e.g. \"s0 s2\"");
  add_format(classify_cmd);

  std::vector<std::string> fibers;
  std::string main_fiber;
  auto* euler_cmd = app.add_subcommand("euler", "Euler numbers, standard monodromies, deficits");
  euler_cmd->add_option("fibers", fibers, "fiber classes")->required();
  euler_cmd->add_option("--main", main_fiber, "main fiber; prints the deficit and candidate subordinate sets");
  add_format(euler_cmd);

  std::string target, parts, archive, verify_archive;
  SearchOptions sopt;
  auto* fact_cmd = app.add_subcommand("factorize", "search a factorization witness");
  fact_cmd->add_option("--target", target, "target fiber class");
  fact_cmd->add_option("--parts", parts, "comma-separated parts, e.g. I1,I1,I1");
  fact_cmd->add_option("--max-len", sopt.max_conj_len, "max conjugator length")->capture_default_str();
  fact_cmd->add_option("--max-exp", sopt.max_exp, "max generator exponent")->capture_default_str();
  fact_cmd->add_option("--budget", sopt.node_budget, "node budget")->capture_default_str();
  fact_cmd->add_option("--archive", archive, "append the witness to this JSON archive");
  fact_cmd->add_option("--verify", verify_archive, "verify every witness in an archive");
  add_format(fact_cmd);

  auto* obs_cmd = app.add_subcommand("obstruct", "trace obstructions for target -> parts");
  obs_cmd->add_option("--target", target)->required();
  obs_cmd->add_option("--parts", parts)->required();
  add_format(obs_cmd);

  std::string fiber, stellar_json, crust_json, fixture, case_id;
  Int l = 1;
  auto* crusts_cmd = app.add_subcommand("crusts", "enumerate simple crusts of a stellar fiber");
  crusts_cmd->add_option("--fiber", fiber, "stellar model name from the fixture, e.g. II*");
  crusts_cmd->add_option("--stellar", stellar_json, "stellar fiber JSON");
  crusts_cmd->add_option("--l", l, "barking multiplicity")->capture_default_str();
  crusts_cmd->add_option("--fixture", fixture, "fixture file");
  add_format(crusts_cmd);

  auto* predict_cmd = app.add_subcommand("predict", "subordinate fiber counts from crust data");
  predict_cmd->add_option("--case", case_id, "case id from the fixture");
  predict_cmd->add_option("--fiber", fiber, "stellar model name");
  predict_cmd->add_option("--stellar", stellar_json, "stellar fiber JSON");
  predict_cmd->add_option("--crust", crust_json, "simple crust JSON");
  predict_cmd->add_option("--fixture", fixture, "fixture file");
  add_format(predict_cmd);

  std::string spec_json;
  auto* local_cmd = app.add_subcommand("localcheck", "numeric check of the local singularity model");
  local_cmd->add_option("--spec", spec_json, "{\"m\":3,\"n\":1,\"l\":1,\"t\":\"1+0i\",\"c\":\"1+0i\"}")->required();
  add_format(local_cmd);

  auto* report_cmd = app.add_subcommand("report", "splitting reports for the barking list");
  report_cmd->add_option("--fixture", fixture, "fixture file");
  report_cmd->add_option("--case", case_id, "single case id");
  add_format(report_cmd);

  int corrupt = -1;
  auto* words_cmd = app.add_subcommand("verify-words", "verify the built-in factorization identities");
  words_cmd->add_option("--corrupt", corrupt, "corrupt entry k before verifying (negative control)");
  add_format(words_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (out.as_json && text) {
    std::cerr << "error: --json and --text are exclusive\n";
    return kUsage;
  }

  try {
    const std::string fx = fixture_path(fixture, "elliptic_barking.json");
    if (*classify_cmd) return cmd_classify(out, mat, word);
    if (*euler_cmd) return cmd_euler(out, fibers, main_fiber);
    if (*fact_cmd) {
      if (!verify_archive.empty()) return cmd_verify_archive(out, verify_archive);
      if (target.empty() || parts.empty()) throw std::invalid_argument("factorize needs --target and --parts");
      return cmd_factorize(out, target, parts, sopt, archive);
    }
    if (*obs_cmd) return cmd_obstruct(out, target, parts);
    if (*crusts_cmd) return cmd_crusts(out, stellar_arg(fiber, stellar_json, fx), l);
    if (*predict_cmd) return cmd_predict(out, fx, case_id, fiber, stellar_json, crust_json);
    if (*local_cmd) return cmd_localcheck(out, spec_json);
    if (*report_cmd) return cmd_report(out, fx, case_id);
    if (*words_cmd) return cmd_verify_words(out, corrupt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kUsage;
}
