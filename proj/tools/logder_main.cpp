#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <logder/logder.hpp>

namespace {

using namespace logder;

Arrangement load(const std::string& spec) {
  if (is_catalog_name(spec)) return catalog(spec);
  std::ifstream in(spec);
  if (!in)
    throw std::invalid_argument("cannot open '" + spec + "' (not a file or catalog name)");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_arrangement(buf.str(), std::filesystem::path(spec).stem().string());
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_analyze(const std::string& spec, unsigned max_degree, bool as_json) {
  const AnalysisReport rep = analyze(load(spec), max_degree);
  if (as_json)
    emit(to_json(rep));
  else
    std::cout << to_text(rep);
  return (rep.lemmas.applicable && !rep.lemmas.all_pass) ? 2 : 0;
}

int cmd_freeness(const std::string& spec, unsigned max_degree, bool as_json) {
  const Arrangement a = load(spec);
  FreenessVerdict v;
  const bool essential = a.size() > 0 && is_essential(a);
  if (a.size() == 0) {
    v.status = Freeness::Free;
    v.exponents.assign(a.dim(), 0);
    v.certificate.clear();
  } else {
    const Arrangement ess = essential ? a : essentialize(a);
    v = max_degree == 0 ? freeness(ess) : freeness(ess, max_degree);
    if (v.status == Freeness::Free) v.exponents = exponents_with_zeros(v.exponents, a.dim());
  }
  if (as_json) {
    json j;
    j["name"] = a.name();
    j["essential"] = essential;
    j["status"] = freeness_name(v.status);
    if (v.status == Freeness::Free) {
      j["exponents"] = v.exponents;
      j["saito_factor"] = rational_str(v.saito_factor);
      json basis = json::array();
      for (const Derivation& th : v.certificate) basis.push_back(th.str());
      j["basis"] = basis;
    } else {
      j["witness"] = v.witness;
    }
    j["degree_bound_used"] = v.summary.bound;
    j["derivation_dims"] = v.summary.dims;
    emit(j);
  } else {
    std::cout << a.name() << ": " << freeness_name(v.status);
    if (v.status == Freeness::Free) {
      std::cout << ", exponents (";
      for (std::size_t i = 0; i < v.exponents.size(); ++i)
        std::cout << (i ? ", " : "") << v.exponents[i];
      std::cout << ")";
      if (!essential && a.size() > 0) std::cout << " [zeros from the non-essential directions]";
      std::cout << "\n";
      for (const Derivation& th : v.certificate) std::cout << "  " << th.str() << "\n";
    } else {
      std::cout << " - " << v.witness << "\n";
    }
  }
  return 0;
}

int cmd_supersolvable(const std::string& spec, bool as_json) {
  const Arrangement a = load(spec);
  const SupersolvableResult res = is_supersolvable(a);
  if (as_json) {
    json j;
    j["name"] = a.name();
    j["supersolvable"] = res.value;
    if (res.chain) {
      j["block_sizes"] = res.chain->block_sizes;
      json chain = json::array();
      for (const Flat& f : res.chain->flats) {
        json cl = json::array();
        for (unsigned x : f.closure) cl.push_back(x + 1);
        chain.push_back(cl);
      }
      j["chain_closures"] = chain;
    }
    emit(j);
  } else {
    std::cout << a.name() << ": " << (res.value ? "supersolvable" : "not supersolvable");
    if (res.chain) {
      std::cout << ", block sizes (";
      for (std::size_t i = 0; i < res.chain->block_sizes.size(); ++i)
        std::cout << (i ? ", " : "") << res.chain->block_sizes[i];
      std::cout << ")\n  chain closures:";
      for (const Flat& f : res.chain->flats) {
        std::cout << " {";
        for (std::size_t i = 0; i < f.closure.size(); ++i)
          std::cout << (i ? "," : "") << f.closure[i] + 1;
        std::cout << "}";
      }
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_lattice(const std::string& spec, bool as_json) {
  const Arrangement a = load(spec);
  const IntersectionLattice lat = build_lattice(a);
  const std::vector<long long> pi = poincare_polynomial(lat);
  if (as_json) {
    json j;
    j["name"] = a.name();
    j["rank"] = lat.top_rank;
    json flats = json::array();
    for (std::size_t i = 0; i < lat.flats.size(); ++i) {
      json f;
      f["rank"] = lat.flats[i].rank;
      json cl = json::array();
      for (unsigned x : lat.flats[i].closure) cl.push_back(x + 1);
      f["closure"] = cl;
      f["mobius"] = lat.mobius[i];
      flats.push_back(f);
    }
    j["flats"] = flats;
    j["poincare"] = pi;
    emit(j);
  } else {
    std::cout << "intersection lattice of " << a.name() << ": " << lat.flats.size()
              << " flats, rank " << lat.top_rank << "\n";
    for (unsigned r = 0; r <= lat.top_rank; ++r) {
      std::cout << "  rank " << r << ":";
      for (std::size_t i : lat.by_rank[r]) {
        std::cout << " {";
        for (std::size_t t = 0; t < lat.flats[i].closure.size(); ++t)
          std::cout << (t ? "," : "") << lat.flats[i].closure[t] + 1;
        std::cout << "} mu=" << lat.mobius[i];
      }
      std::cout << "\n";
    }
    std::cout << "poincare polynomial coefficients:";
    for (long long c : pi) std::cout << " " << c;
    std::cout << "\n";
  }
  return 0;
}

int cmd_derivations(const std::string& spec, unsigned max_degree, bool as_json) {
  const Arrangement a = load(spec);
  unsigned bound = max_degree;
  if (bound == 0) {
    const unsigned r = rank(a);
    bound = a.size() >= r ? static_cast<unsigned>(a.size()) - r + 1 : 1;
  }
  const GradedDerivationSummary sum = minimal_generator_degrees(a, bound);
  if (as_json) {
    json j;
    j["name"] = a.name();
    j["degree_bound"] = sum.bound;
    j["derivation_dims"] = sum.dims;
    j["minimal_generator_degrees"] = sum.min_gen_degrees;
    emit(j);
  } else {
    std::cout << "logarithmic derivations of " << a.name() << " up to degree " << sum.bound
              << "\n";
    for (unsigned d = 0; d < sum.dims.size(); ++d) {
      const auto gens = static_cast<unsigned>(
          std::count(sum.min_gen_degrees.begin(), sum.min_gen_degrees.end(), d));
      std::cout << "  degree " << d << ": dim " << sum.dims[d] << ", new generators " << gens
                << "\n";
    }
  }
  return 0;
}

int cmd_scan(unsigned k, bool as_json, bool list_all, bool list_open) {
  const ScanSummary s = scan(k);
  if (as_json)
    emit(to_json(s));
  else
    std::cout << to_text(s, list_all, list_open);
  return s.open > 0 ? 2 : 0;
}

int cmd_verify(const std::string& spec, bool as_json) {
  const Arrangement a = load(spec);
  const DeletionPathReport rep = verify_deletion_path(a);
  if (as_json)
    emit(to_json(rep));
  else
    std::cout << to_text(rep);
  if (!rep.applicable) return 0;
  const unsigned r = rank(a);
  if (!rep.path_found) return 2;
  if (r >= 4 && !rep.s_at_least_2) return 2;
  return 0;
}

int cmd_catalog(bool as_json) {
  const std::vector<std::string> fixed{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"};
  if (as_json) {
    json j;
    json items = json::array();
    for (const std::string& n : fixed) {
      const Arrangement a = catalog(n);
      json e;
      e["name"] = n;
      e["dimension"] = a.dim();
      e["hyperplanes"] = a.size();
      items.push_back(e);
    }
    j["fixed"] = items;
    j["patterns"] = json::array({"B<k>", "SS22(<k>)", "Fam5(<a>,<b>)"});
    emit(j);
  } else {
    std::cout << "built-in arrangements:\n";
    for (const std::string& n : fixed) {
      const Arrangement a = catalog(n);
      std::cout << "  " << n << "  " << a.size() << " hyperplanes, dimension " << a.dim()
                << "\n";
    }
    std::cout << "  B<k>           coordinate hyperplanes, k >= 1\n";
    std::cout << "  SS22(<k>)      coordinates plus consecutive coordinate sums, k >= 2\n";
    std::cout << "  Fam5(<a>,<b>)  rank-5 family of 10 hyperplanes, rational a and b\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact analysis of central hyperplane arrangements over the rationals"};
  app.require_subcommand(1);

  std::string spec;
  unsigned max_degree = 0;
  unsigned scan_k = 0;
  bool as_json = false, list_all = false, list_open = false;

  auto add_arr = [&](CLI::App* c) {
    c->add_option("arrangement", spec, "catalog name or .arr file")->required();
  };
  auto add_json = [&](CLI::App* c) { c->add_flag("--json", as_json, "emit JSON"); };

  CLI::App* c_analyze = app.add_subcommand(
      "analyze", "lattice, dependency, freeness and supersolvability report");
  add_arr(c_analyze);
  add_json(c_analyze);
  c_analyze->add_option("--max-degree", max_degree,
                        "derivation degree cutoff for the freeness test");

  CLI::App* c_free = app.add_subcommand("freeness", "freeness test with certificate");
  add_arr(c_free);
  add_json(c_free);
  c_free->add_option("--max-degree", max_degree,
                     "derivation degree cutoff (default decides every case)");

  CLI::App* c_ss = app.add_subcommand("supersolvable", "modular coatom chain search");
  add_arr(c_ss);
  add_json(c_ss);

  CLI::App* c_lat = app.add_subcommand("lattice", "intersection lattice and mobius function");
  add_arr(c_lat);
  add_json(c_lat);

  CLI::App* c_der = app.add_subcommand("derivations",
                                       "graded dimensions and minimal generator degrees");
  add_arr(c_der);
  add_json(c_der);
  c_der->add_option("--max-degree", max_degree, "highest derivation degree to compute");

  CLI::App* c_scan = app.add_subcommand(
      "scan", "classify candidate rank-2 patterns for exponents (1,2,...,2,3)");
  c_scan->add_option("-k,--rank", scan_k, "rank (hyperplane count is 2k)")->required();
  add_json(c_scan);
  c_scan->add_flag("--list-all", list_all, "list every configuration");
  c_scan->add_flag("--list-open", list_open, "list configurations left open");

  CLI::App* c_verify = app.add_subcommand(
      "verify", "structural deletion path behind the unique-circuit bound");
  add_arr(c_verify);
  add_json(c_verify);

  CLI::App* c_cat = app.add_subcommand("catalog", "list built-in arrangements");
  add_json(c_cat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (c_analyze->parsed()) return cmd_analyze(spec, max_degree, as_json);
    if (c_free->parsed()) return cmd_freeness(spec, max_degree, as_json);
    if (c_ss->parsed()) return cmd_supersolvable(spec, as_json);
    if (c_lat->parsed()) return cmd_lattice(spec, as_json);
    if (c_der->parsed()) return cmd_derivations(spec, max_degree, as_json);
    if (c_scan->parsed()) return cmd_scan(scan_k, as_json, list_all, list_open);
    if (c_verify->parsed()) return cmd_verify(spec, as_json);
    if (c_cat->parsed()) return cmd_catalog(as_json);
  } catch (const ArrParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
