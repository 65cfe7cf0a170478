#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsplab/barrec.hpp"
#include "nsplab/corpus.hpp"
#include "nsplab/lang.hpp"
#include "nsplab/nsp.hpp"
#include "nsplab/parser.hpp"
#include "nsplab/reduction.hpp"
#include "nsplab/separation.hpp"
#include "nsplab/seqcode.hpp"
#include "nsplab/translations.hpp"
#include "nsplab/type.hpp"

using json = nlohmann::json;
using namespace nsplab;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

LangTag tag_of(const std::string& s) {
  auto t = parse_lang_tag(s);
  if (!t) throw UsageError("unknown language tag '" + s + "'");
  return *t;
}

// JSON value for a Nat: a number when it fits an unsigned 64-bit integer,
// a decimal string otherwise.
json jnat(const Nat& n) {
  if (n.fits_ulong_p()) return json(static_cast<unsigned long>(n.get_ui()));
  return json(n.get_str());
}

json jnats(const std::vector<Nat>& v) {
  json a = json::array();
  for (const Nat& n : v) a.push_back(jnat(n));
  return a;
}

Nat parse_nat(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("expected a decimal natural, got '" + s + "'");
  return Nat(s);
}

// "x0,x1,..." (or the empty string) to a sequence code.
Nat parse_node(const std::string& s) {
  std::vector<Nat> xs;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    std::size_t end = comma == std::string::npos ? s.size() : comma;
    std::string piece = s.substr(pos, end - pos);
    // Trim blanks so "0, 1" works.
    while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
    while (!piece.empty() && piece.back() == ' ') piece.pop_back();
    if (!piece.empty()) xs.push_back(parse_nat(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return seq_encode(xs);
}

std::string show_node(const Nat& code) {
  std::string out = "<";
  bool first = true;
  for (const Nat& x : seq_decode(code)) {
    if (!first) out += ",";
    out += x.get_str();
    first = false;
  }
  return out + ">";
}

int run_eval(const std::string& lang, long long fuel, bool trace,
             const std::string& file) {
  LangTag tag = tag_of(lang);
  TermPtr m = parse_term_file(file);
  StepTrace tr = evaluate(m, tag, fuel, trace);
  if (trace) {
    long long i = 0;
    for (const StepRecord& s : tr.steps) {
      json line = {{"step", ++i}, {"rule", s.rule}, {"term", show_term(s.term)}};
      std::cout << line.dump() << "\n";
    }
  }
  switch (tr.outcome) {
    case StepTrace::Value:
      std::cout << tr.value.get_str() << "\n";
      return 0;
    case StepTrace::FuelExhausted:
      std::cerr << "fuel exhausted after " << tr.steps_taken << " steps\n";
      return 1;
    default:
      std::cerr << "stuck: " << tr.stuck_reason << "\n";
      return 1;
  }
}

int run_translate(const std::string& from, const std::string& to,
                  bool products, const std::string& file) {
  LangTag src = tag_of(from);
  LangTag dst = tag_of(to);
  TermPtr m = parse_term_file(file);
  if (auto why = membership_violation(m, src))
    throw CheckFailure("input is not a " + from + " term: " + *why);
  TermPtr out;
  if (show_lang_tag(src) == show_lang_tag(dst)) {
    out = m;
  } else if (dst.base == LangTag::PCF_byval) {
    out = to_pcf(m, src);
  } else if (src.base == LangTag::T_min && dst.base == LangTag::W) {
    out = t_min_to_w(m);
  } else if (src.base == LangTag::W && dst.base == LangTag::T_min) {
    out = w_to_t_min(m);
  } else {
    throw UsageError("no translation from '" + from + "' to '" + to +
                     "' (supported: any tag to pcf+byval, t+min to w, "
                     "w to t+min)");
  }
  if (products) out = eliminate_products(out);
  std::cout << show_term(out) << "\n";
  return 0;
}

int run_nsp(const std::string& file, const nsp::Budget& b, int lwf,
            bool as_json, bool accel) {
  TermPtr m = parse_term_file(file);
  nsp::AccelTable acc;
  if (accel) acc = barrec::standard_accel();
  nsp::ProcPtr p = nsp::denote(m, acc);
  if (lwf >= 0) {
    nsp::LwfResult r = nsp::lwf_probe(p, lwf, b);
    json rep = {{"schema", "nsplab/lwf-1"},
                {"bound", lwf},
                {"chain_found", r.chain_found},
                {"max_depth", r.max_depth},
                {"lwf_by_construction", nsp::lwf_by_construction(m)}};
    std::cout << rep.dump(2) << "\n";
    return 0;
  }
  if (as_json) {
    std::cout << nsp::proc_to_json(p, b) << "\n";
  } else {
    std::cout << nsp::show_proc(p, b) << "\n";
  }
  return 0;
}

nsp::SemVal denote_file(const std::string& file, const nsp::AccelTable& acc) {
  return nsp::denote_sem(parse_term_file(file), acc);
}

int run_barrec(const std::string& flavor, const std::string& f_file,
               const std::string& g_file, const std::string& node,
               const barrec::ExploreCaps& caps, const nsp::Budget& b,
               const std::string& conformance, const std::string& out_file) {
  barrec::Flavor fl;
  if (flavor == "spector") fl = barrec::Flavor::Spector;
  else if (flavor == "kohlenbach") fl = barrec::Flavor::Kohlenbach;
  else throw UsageError("--flavor must be spector or kohlenbach");
  nsp::AccelTable acc = barrec::standard_accel();
  nsp::SemVal F = denote_file(f_file, acc);
  nsp::SemVal G = denote_file(g_file, acc);

  if (!conformance.empty()) {
    nsp::SemVal psi = denote_file(conformance, acc);
    barrec::ConformanceReport rep =
        barrec::conformance_check(psi, {{F, G}}, fl, caps, b);
    json violations = json::array();
    for (const auto& v : rep.violations) {
      json item = {{"node", show_node(v.node)}, {"kind", v.kind}};
      item["expected"] = v.expected ? jnat(*v.expected) : json(nullptr);
      item["actual"] = v.actual ? jnat(*v.actual) : json(nullptr);
      violations.push_back(item);
    }
    json out = {{"schema", "nsplab/conformance-1"},
                {"flavor", flavor},
                {"pass", rep.pass},
                {"nodes_checked", rep.nodes_checked},
                {"violations", violations}};
    if (!out_file.empty()) std::ofstream(out_file) << out.dump(2) << "\n";
    std::cout << out.dump(2) << "\n";
    return rep.pass ? 0 : 1;
  }

  Nat xs = parse_node(node);
  barrec::BarTree tree(F, fl, b);
  Nat value = barrec::reference_phi(tree, G, xs);
  std::cout << "Phi" << show_node(xs) << " = " << value.get_str() << "\n";
  barrec::ExploreResult er = barrec::explore_tree(tree, caps);
  const char* verdict =
      er.verdict == barrec::TreeVerdict::WellFoundedUpToCaps
          ? "well-founded up to caps"
          : er.verdict == barrec::TreeVerdict::InfinitePathWitness
                ? "infinite-path witness"
                : "budget exceeded";
  std::cout << "tree (depth " << caps.depth << ", window " << caps.window
            << "): " << verdict << ", " << er.internal_nodes.size()
            << " internal, " << er.leaves.size() << " leaves\n";
  for (const Nat& n : er.internal_nodes)
    std::cout << "  internal " << show_node(n) << "\n";
  for (const Nat& n : er.leaves) std::cout << "  leaf " << show_node(n) << "\n";
  return 0;
}

int run_separate(const std::string& candidate, int depth_cap,
                 long long entry_cap, const nsp::Budget& b,
                 const std::string& out_file) {
  TermPtr m = parse_term_file(candidate);
  separation::SeparationReport r = separation::run_separation_term(
      m, barrec::standard_accel(), b, depth_cap,
      static_cast<std::size_t>(entry_cap));
  json out = {{"schema", "nsplab/separation-1"},
              {"c", jnat(r.c)},
              {"d", r.d},
              {"k", jnats(r.k)},
              {"m", jnats(r.m)},
              {"x", jnats(r.x)},
              {"y", jnats(r.y)},
              {"K", jnat(r.K)},
              {"psi_result", jnat(r.psi_result)},
              {"phi_result", jnat(r.phi_result)},
              {"checks",
               {{"neighbourhood", r.checks.neighbourhood},
                {"psi_eval", r.checks.psi_eval},
                {"phi_eval", r.checks.phi_eval}}},
              {"pass", r.pass}};
  if (!r.detail.empty()) out["detail"] = r.detail;
  if (!out_file.empty()) std::ofstream(out_file) << out.dump(2) << "\n";
  std::cout << out.dump(2) << "\n";
  return r.pass ? 0 : 1;
}

int run_corpus(const std::string& lang, unsigned long long seed, int size,
               const std::string& out_dir) {
  LangTag tag = tag_of(lang);
  std::vector<TermPtr> terms = corpus::generate(tag, seed, size);
  std::filesystem::create_directories(out_dir);
  json files = json::array();
  for (int i = 0; i < size; ++i) {
    std::string name = show_lang_tag(tag);
    for (char& c : name)
      if (c == '+' || c == '@') c = '_';
    std::string path = out_dir + "/" + name + "-" + std::to_string(seed) +
                       "-" + std::to_string(i) + ".term";
    std::ofstream f(path);
    f << "; lang: " << show_lang_tag(tag) << "\n"
      << "; seed: " << seed << "\n"
      << "; index: " << i << "\n"
      << show_term(terms[static_cast<std::size_t>(i)]) << "\n";
    files.push_back(path);
  }
  json out = {{"schema", "nsplab/corpus-1"},
              {"lang", show_lang_tag(tag)},
              {"seed", seed},
              {"size", size},
              {"files", files}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"languages, translations, NSP denotations, bar recursion and "
               "the separation pipeline"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "small-step evaluate a term file");
  std::string ev_lang = "pcf+byval", ev_file;
  long long ev_fuel = kDefaultFuel;
  bool ev_trace = false;
  eval->add_option("--lang", ev_lang, "language tag")->capture_default_str();
  eval->add_option("--fuel", ev_fuel, "step budget")->capture_default_str();
  eval->add_flag("--trace", ev_trace, "emit one JSON line per step");
  eval->add_option("file", ev_file, "term file")->required();

  // translate
  auto* trans = app.add_subcommand("translate", "translate between languages");
  std::string tr_from, tr_to, tr_file;
  bool tr_products = false;
  trans->add_option("--from", tr_from, "source language tag")->required();
  trans->add_option("--to", tr_to, "target language tag")->required();
  trans->add_flag("--eliminate-products", tr_products,
                  "apply product elimination to the result");
  trans->add_option("file", tr_file, "term file")->required();

  // nsp
  auto* nspc = app.add_subcommand("nsp", "denote a term as a procedure tree");
  std::string nsp_file;
  nsp::Budget nsp_b;
  int nsp_lwf = -1;
  bool nsp_json = false, nsp_accel = true;
  nspc->add_option("--denote", nsp_file, "term file")->required();
  nspc->add_option("--depth", nsp_b.depth, "exploration depth")
      ->capture_default_str();
  nspc->add_option("--branches", nsp_b.branch_window,
                   "branch indices explored per case node")
      ->capture_default_str();
  nspc->add_option("--steps", nsp_b.steps, "head-reduction steps per node")
      ->capture_default_str();
  nspc->add_option("--lwf", nsp_lwf,
                   "probe for nested-application chains past this bound");
  nspc->add_flag("--json", nsp_json, "emit the explored tree as JSON");
  nspc->add_flag("!--no-accel", nsp_accel,
                 "disable the standard acceleration table");

  // barrec
  auto* bar = app.add_subcommand("barrec", "run the reference bar recursor");
  std::string br_flavor, br_f, br_g, br_node, br_conf, br_out;
  barrec::ExploreCaps br_caps;
  nsp::Budget br_b;
  bar->add_option("--flavor", br_flavor, "spector | kohlenbach")->required();
  bar->add_option("--F", br_f, "type-2 functional term file")->required();
  bar->add_option("--G", br_g, "branch functional term file")->required();
  bar->add_option("--node", br_node, "start node, e.g. \"\" or \"2,0,1\"");
  bar->add_option("--depth", br_caps.depth, "tree exploration depth")
      ->capture_default_str();
  bar->add_option("--window", br_caps.window, "child labels probed per node")
      ->capture_default_str();
  bar->add_option("--steps", br_b.steps, "head-reduction steps per node")
      ->capture_default_str();
  bar->add_option("--conformance", br_conf,
                  "candidate term file to check against the equations");
  bar->add_option("--out", br_out, "also write the JSON report here");

  // separate
  auto* sep = app.add_subcommand(
      "separate", "run the separation pipeline on a candidate");
  std::string sp_cand, sp_out;
  int sp_depth = 8;
  long long sp_entries = 4096;
  nsp::Budget sp_b;
  sep->add_option("--candidate", sp_cand, "candidate term file")->required();
  sep->add_option("--depth-cap", sp_depth, "analysis depth cap")
      ->capture_default_str();
  sep->add_option("--entry-cap", sp_entries, "trace entry cap")
      ->capture_default_str();
  sep->add_option("--fuel", sp_b.steps, "head-reduction steps per node")
      ->capture_default_str();
  sep->add_option("--out", sp_out, "also write the JSON report here");

  // corpus
  auto* cor = app.add_subcommand("corpus", "generate a deterministic corpus");
  std::string co_lang = "pcf+byval", co_out = "corpus";
  unsigned long long co_seed = 0;
  int co_size = 1;
  cor->add_option("--lang", co_lang, "language tag")->capture_default_str();
  cor->add_option("--seed", co_seed, "generator seed")->capture_default_str();
  cor->add_option("--size", co_size, "number of terms")->capture_default_str();
  cor->add_option("--out", co_out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return run_eval(ev_lang, ev_fuel, ev_trace, ev_file);
    if (trans->parsed())
      return run_translate(tr_from, tr_to, tr_products, tr_file);
    if (nspc->parsed())
      return run_nsp(nsp_file, nsp_b, nsp_lwf, nsp_json, nsp_accel);
    if (bar->parsed())
      return run_barrec(br_flavor, br_f, br_g, br_node, br_caps, br_b,
                        br_conf, br_out);
    if (sep->parsed())
      return run_separate(sp_cand, sp_depth, sp_entries, sp_b, sp_out);
    if (cor->parsed()) return run_corpus(co_lang, co_seed, co_size, co_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
