// edrlab: classify small commutative rings, check 2x2 lifting properties,
// compute unit-map images, Smith normal forms, bounded witnesses over Z, and
// run the theorem verification sweep.
//
// Exit codes: 0 success/verified, 1 counterexample found, 2 usage error,
// 3 budget exhausted (with --strict-unknown).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "edrlab/report.hpp"

using namespace edrlab;

namespace {

struct GlobalOpts {
  std::uint64_t budget = Budget::kDefaultTicks;
  int threads = 1;
  std::uint64_t seed = 0;
  bool strict_unknown = false;
  std::string format = "json";
  std::string out;
};

int emit(const GlobalOpts& g, const Json& j) {
  std::string text = g.format == "pretty" ? pretty(j) : j.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open output file " << g.out << "\n";
      return 2;
    }
    f << text;
  }
  return 0;
}

bool json_mentions_unknown(const Json& j) {
  if (j.is_string()) return j.get<std::string>() == "unknown";
  if (j.is_object() || j.is_array()) {
    for (const auto& v : j)
      if (json_mentions_unknown(v)) return true;
  }
  return false;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> read_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Error::Kind::IO, "cannot open spec file " + path);
  std::vector<std::string> specs;
  std::string line;
  while (std::getline(f, line)) {
    auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    specs.push_back(t);
  }
  return specs;
}

int finish(const GlobalOpts& g, const Json& j, bool counterexample) {
  int rc = emit(g, j);
  if (rc) return rc;
  if (counterexample) return 1;
  if (g.strict_unknown && json_mentions_unknown(j)) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic lab for elementary divisor ring criteria"};
  app.require_subcommand(1);
  // global options may appear after the subcommand name
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--budget-nodes", g.budget, "node budget per search/flag");
  app.add_option("--threads", g.threads, "worker threads");
  app.add_option("--seed", g.seed, "seed offset for sampled checks");
  app.add_flag("--strict-unknown", g.strict_unknown, "exit 3 when any result is unknown");
  app.add_option("--format", g.format, "json | csv | pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--out", g.out, "output file (default stdout)");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "evaluate ring-class flags");
  std::string cl_ring, cl_flags = "all", cl_batch;
  classify_cmd->add_option("--ring", cl_ring, "ring spec");
  classify_cmd->add_option("--flags", cl_flags, "all or comma list of flag names");
  classify_cmd->add_option("--batch", cl_batch, "file with one ring spec per line");

  // matrix check
  auto* matrix_cmd = app.add_subcommand("matrix", "matrix-level operations");
  auto* check_cmd = matrix_cmd->add_subcommand("check", "lifting properties of a 2x2 matrix");
  std::string mc_ring, mc_mat, mc_props = "all";
  check_cmd->add_option("--ring", mc_ring, "ring spec")->required();
  check_cmd->add_option("--mat", mc_mat, "matrix literal [[a,b],[c,d]]")->required();
  check_cmd->add_option("--props", mc_props, "all or comma list of se,e,dl,wdl,nf");

  // upsilon
  auto* ups_cmd = app.add_subcommand("upsilon", "unit-map image U(R/Rac) x U(R/Rbc) -> U(R/Rc)");
  std::string up_ring, up_a, up_b, up_c;
  ups_cmd->add_option("--ring", up_ring)->required();
  ups_cmd->add_option("--a", up_a)->required();
  ups_cmd->add_option("--b", up_b)->required();
  ups_cmd->add_option("--c", up_c)->required();

  // snf
  auto* snf_cmd = app.add_subcommand("snf", "Smith normal form certificate");
  std::string snf_base = "Z", snf_mat;
  snf_cmd->add_option("--base", snf_base, "Z or PolyF:p=<prime>");
  snf_cmd->add_option("--mat", snf_mat, "matrix literal")->required();

  // cr3 / eq4
  auto* cr3_cmd = app.add_subcommand("cr3", "bounded witness for the unimodular-pair criterion over Z");
  long long c3a = 0, c3b = 0, c3s = 0, c3H = 30;
  cr3_cmd->add_option("--a", c3a)->required();
  cr3_cmd->add_option("--b", c3b)->required();
  cr3_cmd->add_option("--s", c3s)->required();
  cr3_cmd->add_option("--bound", c3H);

  auto* eq4_cmd = app.add_subcommand("eq4", "bounded witness for the quadratic equation over Z");
  long long e4a = 0, e4u = 1, e4t = 0, e4H = 30;
  eq4_cmd->add_option("--a", e4a)->required();
  eq4_cmd->add_option("--u", e4u)->required();
  eq4_cmd->add_option("--t", e4t)->required();
  eq4_cmd->add_option("--bound", e4H);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the theorem sweep over a corpus");
  std::string v_corpus = "default", v_theorems = "all";
  verify_cmd->add_option("--corpus", v_corpus, "default or a spec file path");
  verify_cmd->add_option("--theorems", v_theorems, "all or comma list of theorem ids");

  // hunt
  auto* hunt_cmd = app.add_subcommand("hunt", "search the corpus for a flag predicate");
  std::string h_pred, h_corpus = "default";
  hunt_cmd->add_option("--predicate", h_pred, "boolean expression over flags")->required();
  hunt_cmd->add_option("--corpus", h_corpus, "default or a spec file path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    ensure_builtin_tables();

    if (classify_cmd->parsed()) {
      std::vector<Flag> which;
      if (cl_flags == "all") {
        which = all_flags();
      } else {
        for (const auto& name : split_list(cl_flags)) {
          bool ok = false;
          for (auto& [f, s] : flag_names())
            if (s == name) {
              which.push_back(f);
              ok = true;
            }
          if (!ok) fail(Error::Kind::Parse, "unknown flag " + name);
        }
      }
      std::vector<std::string> specs;
      if (!cl_batch.empty())
        specs = read_spec_file(cl_batch);
      else if (!cl_ring.empty())
        specs = {cl_ring};
      else
        fail(Error::Kind::Parse, "classify needs --ring or --batch");
      std::vector<ClassReport> reports;
      for (const auto& s : specs)
        reports.push_back(classify(make_finite_ring(s), which, g.budget, g.threads));
      if (g.format == "csv") {
        std::string text = class_report_csv_header();
        for (const auto& r : reports) text += class_report_csv_row(r);
        if (g.out.empty()) {
          std::cout << text;
        } else {
          std::ofstream f(g.out, std::ios::binary);
          f << text;
        }
        return 0;
      }
      Json j = reports.size() == 1 ? class_report_json(reports[0], false) : Json::array();
      if (reports.size() > 1)
        for (const auto& r : reports) j.push_back(class_report_json(r, false));
      return finish(g, j, false);
    }

    if (check_cmd->parsed()) {
      RingHandle h = make_ring(mc_ring);
      if (h.zprof) {
        // bounded-Z profile: exact unimodularity, shell-bounded searches
        zlift::Mat2 A{};
        {
          std::string s = detail::trim(mc_mat);
          int depth = 0;
          std::string cur;
          std::vector<Zint> vals;
          for (char c : s.substr(1, s.size() - 2)) {
            if (c == '[') {
              if (depth == 0) cur.clear();
              ++depth;
            }
            if (depth > 0) cur += c;
            if (c == ']') {
              --depth;
              if (depth == 0) {
                auto parts = detail::split_top(cur.substr(1, cur.size() - 2), ',');
                for (auto& p : parts) vals.emplace_back(detail::trim(p));
              }
            }
          }
          if (vals.size() != 4)
            fail(Error::Kind::Parse, "bounded-Z matrix check needs a 2x2 literal");
          for (int i = 0; i < 4; ++i) A[static_cast<std::size_t>(i)] = vals[static_cast<std::size_t>(i)];
        }
        long long H = h.zprof->height;
        auto se = zlift::simply_extendable(A, H);
        auto e = zlift::extendable(A, H);
        auto dl = zlift::det_liftable(A, H, false);
        auto wdl = zlift::det_liftable(A, H, true);
        auto nf = zlift::non_full(A);
        return finish(g, zlift_json(A, H, se, e, dl, wdl, nf), false);
      }
      Ring R = h.finite;
      FMat A = parse_matrix(R, mc_mat);
      Budget b(g.budget);
      bool with_nf = mc_props == "all" || mc_props.find("nf") != std::string::npos;
      lift::Prop4 p;
      if (mc_props == "all") {
        p = lift::check_matrix(A, b, true);
      } else {
        FMat w;
        for (const auto& name : split_list(mc_props)) {
          if (name == "se") {
            p.simply_extendable = lift::is_simply_extendable(A, b, &w);
            if (is_true(p.simply_extendable)) p.se_witness = w;
          } else if (name == "e") {
            p.extendable = lift::is_extendable(A, b, &w);
            if (is_true(p.extendable)) p.e_witness = w;
          } else if (name == "dl") {
            p.det_liftable = lift::is_det_liftable(A, b, &w);
            if (is_true(p.det_liftable)) p.dl_witness = w;
          } else if (name == "wdl") {
            p.weakly_det_liftable = lift::is_weakly_det_liftable(A, b, &w);
            if (is_true(p.weakly_det_liftable)) p.wdl_witness = w;
          } else if (name == "nf") {
            auto q = quotient(R, det2(A));
            FMat Abar(q.ring, 2, 2);
            for (int i = 0; i < 4; ++i) Abar.a[static_cast<std::size_t>(i)] = q.project(A.a[static_cast<std::size_t>(i)]);
            auto nf = lift::search_non_full(Abar, b);
            p.non_full_mod_det = nf.val;
            p.nf_witness = nf.lmoq;
            p.nf_quotient = q.ring;
          } else {
            fail(Error::Kind::Parse, "unknown property " + name);
          }
        }
      }
      (void)with_nf;
      return finish(g, prop4_json(A, p), false);
    }

    if (ups_cmd->parsed()) {
      Ring R = make_finite_ring(up_ring);
      UnitMapImage im = upsilon_image(R, R->parse_elem(up_a), R->parse_elem(up_b),
                                      R->parse_elem(up_c));
      return finish(g, upsilon_json(im), false);
    }

    if (snf_cmd->parsed()) {
      if (snf_base == "Z") {
        // integer matrix literal
        std::string s = detail::trim(snf_mat);
        std::vector<std::vector<Zint>> rows;
        if (s.size() < 4 || s.front() != '[' || s.back() != ']')
          fail(Error::Kind::Parse, "matrix literal must look like [[..],[..]]");
        int depth = 0;
        std::string cur;
        for (char c : s.substr(1, s.size() - 2)) {
          if (c == '[') {
            if (depth == 0) cur.clear();
            ++depth;
          }
          if (depth > 0) cur += c;
          if (c == ']') {
            --depth;
            if (depth == 0) {
              auto parts = detail::split_top(cur.substr(1, cur.size() - 2), ',');
              std::vector<Zint> row;
              for (auto& p : parts) row.emplace_back(detail::trim(p));
              rows.push_back(std::move(row));
            }
          }
        }
        if (rows.empty()) fail(Error::Kind::Parse, "empty matrix literal");
        ZDomain dom;
        DMat<ZDomain> B(rows.size(), rows[0].size(), Zint(0));
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != B.cols) fail(Error::Kind::Parse, "ragged matrix literal");
          for (std::size_t j = 0; j < B.cols; ++j) B.at(i, j) = rows[i][j];
        }
        auto cert = snf(dom, B);
        return finish(g, snf_json(dom, cert), false);
      }
      if (snf_base.rfind("PolyF:p=", 0) == 0) {
        long long p;
        if (!detail::parse_ll(snf_base.substr(8), p))
          fail(Error::Kind::Parse, "bad base " + snf_base);
        FpDomain dom(static_cast<std::uint32_t>(p));
        std::string s = detail::trim(snf_mat);
        std::vector<std::vector<FpPoly>> rows;
        int depth = 0;
        std::string cur;
        for (char c : s.substr(1, s.size() - 2)) {
          if (c == '[') {
            if (depth == 0) cur.clear();
            ++depth;
          }
          if (depth > 0) cur += c;
          if (c == ']') {
            --depth;
            if (depth == 0) {
              auto parts = detail::split_top(cur.substr(1, cur.size() - 2), ',');
              std::vector<FpPoly> row;
              for (auto& q : parts) row.push_back(dom.parse(detail::trim(q)));
              rows.push_back(std::move(row));
            }
          }
        }
        if (rows.empty()) fail(Error::Kind::Parse, "empty matrix literal");
        DMat<FpDomain> B(rows.size(), rows[0].size(), dom.zero());
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (std::size_t j = 0; j < B.cols; ++j) B.at(i, j) = rows[i][j];
        auto cert = snf(dom, B);
        return finish(g, snf_json(dom, cert), false);
      }
      fail(Error::Kind::Parse, "snf base must be Z or PolyF:p=<prime>");
    }

    if (cr3_cmd->parsed()) {
      Cr3Witness w = cr3_witness(c3a, c3b, c3s, c3H);
      return finish(g, cr3_json(c3a, c3b, c3s, c3H, w), false);
    }

    if (eq4_cmd->parsed()) {
      Eq4Witness w = eq4_witness(e4a, e4u, e4t, e4H);
      return finish(g, eq4_json(e4a, e4u, e4t, e4H, w), false);
    }

    if (verify_cmd->parsed()) {
      auto corpus = v_corpus == "default" ? default_corpus()
                                          : build_corpus(read_spec_file(v_corpus));
      std::vector<std::string> ids;
      if (v_theorems == "all") {
        ids = all_theorem_ids();
      } else {
        auto known = all_theorem_ids();
        for (const auto& t : split_list(v_theorems)) {
          if (t == "TH2") {
            ids.insert(ids.end(), {"TH2-cond1", "TH2-cond2", "TH2-cond3"});
            continue;
          }
          if (std::find(known.begin(), known.end(), t) == known.end())
            fail(Error::Kind::Parse, "unknown theorem id " + t);
          ids.push_back(t);
        }
      }
      SweepReport rep = sweep(corpus, ids, g.threads, g.budget, g.seed);
      return finish(g, rep.to_json(), rep.counterexamples > 0);
    }

    if (hunt_cmd->parsed()) {
      auto corpus = h_corpus == "default" ? default_corpus()
                                          : build_corpus(read_spec_file(h_corpus));
      HuntResult r = hunt(h_pred, corpus, g.budget);
      Json j;
      j["schema"] = "edrlab.hunt.v1";
      j["predicate"] = h_pred;
      j["found"] = r.found;
      if (r.found) {
        j["ring"] = r.ring_spec;
        j["flags"] = r.evidence;
      }
      j["skipped_unknown"] = r.skipped_unknown;
      return finish(g, j, false);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind == Error::Kind::Parse || e.kind == Error::Kind::Precondition ? 2
           : e.kind == Error::Kind::Budget                                     ? 3
                                                                                : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
