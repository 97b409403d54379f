#pragma once
// JSON serialization of library types and fixture loading.

#include <barkfib/localmodel.hpp>
#include <barkfib/subord.hpp>

#include <json.hpp>

#include <fstream>
#include <map>
#include <regex>
#include <string>
#include <vector>

namespace barkfib {

using json = nlohmann::json;

inline constexpr const char* kSchema = "barkfib/1";

inline json to_json(const Mat2& m) { return json::array({json::array({m.a(), m.b()}), json::array({m.c(), m.d()})}); }

inline json to_json(const FiberMultiset& ms) {
  json a = json::array();
  for (const auto& f : ms) a.push_back(f.str());
  return a;
}

inline FiberMultiset multiset_from_json(const json& j) {
  FiberMultiset ms;
  for (const auto& s : j) ms.push_back(parse_fiber(s.get<std::string>()));
  return canonical(ms);
}

inline json to_json(const FactorizationWitness& w) {
  json fs = json::array();
  for (const auto& f : w.factors) fs.push_back({{"base", f.base.str()}, {"conj", f.conjugator.str()}});
  return {{"target", w.target.str()}, {"factors", fs}};
}

inline FactorizationWitness witness_from_json(const json& j) {
  FactorizationWitness w;
  w.target = parse_fiber(j.at("target").get<std::string>());
  for (const auto& f : j.at("factors"))
    w.factors.push_back({parse_fiber(f.at("base").get<std::string>()), parse_word(f.value("conj", std::string("1")))});
  return w;
}

inline json to_json(const ObstructionResult& r) {
  return {{"verdict", verdict_str(r.verdict)}, {"rule", r.rule}, {"detail", r.detail}};
}

inline json to_json(const StellarFiber& x) {
  return {{"core_mult", x.core_mult}, {"core_genus", x.core_genus}, {"branches", x.branches}};
}

inline StellarFiber stellar_from_json(const json& j, std::string name = {}) {
  StellarFiber x;
  x.name = std::move(name);
  x.core_mult = j.at("core_mult").get<Int>();
  x.core_genus = j.value("core_genus", 0);
  x.branches = j.at("branches").get<std::vector<std::vector<Int>>>();
  return x;
}

inline json to_json(const SimpleCrust& y) { return {{"n0", y.n0}, {"subbranches", y.subbranches}, {"l", y.l}}; }

inline SimpleCrust crust_from_json(const json& j) {
  SimpleCrust y;
  y.n0 = j.at("n0").get<Int>();
  y.subbranches = j.at("subbranches").get<std::vector<std::vector<Int>>>();
  y.l = j.value("l", Int{1});
  return y;
}

inline json to_json(const SubordinateProfile& p) {
  return {{"num_fibers", p.num_fibers},
          {"sings_per_fiber", p.sings_per_fiber},
          {"location", location_str(p.location)},
          {"basis", basis_str(p.basis)}};
}

inline json to_json(const SplittingReport& r) {
  json det = json::array();
  for (const auto& ms : r.determined) det.push_back(to_json(ms));
  json ev = r.evidence;
  json cands = json::array();
  for (const auto& c : r.candidates)
    cands.push_back({{"subordinates", to_json(c.candidate)},
                     {"excluded", c.excluded},
                     {"basis", c.basis},
                     {"notes", c.notes}});
  json j{{"id", r.id},         {"original", r.original.str()}, {"main", r.main.str()}, {"deficit", r.deficit},
         {"determined", det}, {"ambiguous", r.ambiguous()},   {"evidence", ev},        {"candidates", cands}};
  if (r.profile) j["profile"] = to_json(*r.profile);
  return j;
}

inline json to_json(cplx z) { return format_complex(z); }

/// One entry of the barking list, with templates already expanded.
struct FixtureCase {
  std::string id;
  FiberClass original;
  FiberClass main;
  std::optional<CrustInput> crust;
  std::vector<FiberMultiset> expected;
  /// (fibers, singularities per fiber) stated for the crust, if any.
  std::optional<std::pair<Int, Int>> expected_counts;
  std::string note;
};

struct Fixture {
  std::map<std::string, StellarFiber> stellar;
  std::map<std::string, json> constellar;
  std::vector<FixtureCase> cases;
};

namespace detail {

/// Replaces "{n}", "{n+k}" and "{n-k}" with the value for n.
inline std::string expand_template(const std::string& s, int n) {
  static const std::regex re(R"(\{n(?:([+-])(\d+))?\})");
  std::string out;
  auto begin = std::sregex_iterator(s.begin(), s.end(), re);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out += s.substr(last, static_cast<std::size_t>(m.position()) - last);
    int v = n;
    if (m[1].matched) v += (m[1].str() == "+" ? 1 : -1) * std::stoi(m[2].str());
    out += std::to_string(v);
    last = static_cast<std::size_t>(m.position() + m.length());
  }
  return out + s.substr(last);
}

}  // namespace detail

inline Fixture fixture_from_json(const json& j) {
  Fixture fx;
  for (const auto& [name, v] : j.at("stellar_fibers").items()) {
    if (v.value("constellar", false))
      fx.constellar[name] = v;
    else
      fx.stellar[name] = stellar_from_json(v, name);
  }
  for (const auto& c : j.at("cases")) {
    std::vector<std::optional<int>> ns{std::nullopt};
    if (c.contains("n_values")) {
      ns.clear();
      for (int n : c.at("n_values").get<std::vector<int>>()) ns.emplace_back(n);
    }
    for (auto n : ns) {
      auto sub = [&](const std::string& s) { return n ? detail::expand_template(s, *n) : s; };
      FixtureCase fc;
      fc.id = c.at("id").get<std::string>() + (n ? "[n=" + std::to_string(*n) + "]" : "");
      fc.original = parse_fiber(sub(c.at("original").get<std::string>()));
      fc.main = parse_fiber(sub(c.at("main").get<std::string>()));
      fc.note = c.value("note", "");
      if (c.contains("crust")) {
        const auto& cj = c.at("crust");
        const std::string fname = cj.at("fiber").get<std::string>();
        auto it = fx.stellar.find(fname);
        if (it == fx.stellar.end()) throw std::invalid_argument("case " + fc.id + ": unknown stellar fiber " + fname);
        fc.crust = CrustInput{it->second, crust_from_json(cj)};
        if (cj.contains("counts")) fc.expected_counts = {cj.at("counts").at(0).get<Int>(), cj.at("counts").at(1).get<Int>()};
      }
      for (const auto& e : c.at("expected")) {
        json ex = json::array();
        for (const auto& s : e) ex.push_back(sub(s.get<std::string>()));
        fc.expected.push_back(multiset_from_json(ex));
      }
      std::sort(fc.expected.begin(), fc.expected.end(), multiset_less);
      fx.cases.push_back(std::move(fc));
    }
  }
  return fx;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

inline Fixture load_fixture(const std::string& path) { return fixture_from_json(load_json_file(path)); }

}  // namespace barkfib
