#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "nsplab/barrec.hpp"
#include "nsplab/corpus.hpp"
#include "nsplab/nsp.hpp"
#include "nsplab/parser.hpp"
#include "nsplab/reduction.hpp"
#include "nsplab/separation.hpp"
#include "nsplab/seqcode.hpp"

using namespace nsplab;

namespace {

LangTag tag(const std::string& s) { return *parse_lang_tag(s); }

TermPtr example(const std::string& name) {
  return parse_term_file(std::string(EXAMPLES_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("min5.term is a PCF program evaluating to 5") {
  TermPtr m = example("min5.term");
  CHECK(is_closed(m));
  CHECK(in_language(m, tag("pcf")));
  StepTrace t = evaluate(m, tag("pcf"), 100);
  REQUIRE(t.outcome == StepTrace::Value);
  CHECK(t.value == 5);
}

TEST_CASE("fplus0.term and g0.term drive the reference recursor to 6") {
  TermPtr f = example("fplus0.term");
  TermPtr g = example("g0.term");
  CHECK(in_language(f, tag("t0str")));
  CHECK(in_language(g, tag("t0str")));
  nsp::AccelTable acc = barrec::standard_accel();
  nsp::SemVal F = nsp::denote_sem(f, acc);
  nsp::SemVal G = nsp::denote_sem(g, acc);
  barrec::BarTree tree(F, barrec::Flavor::Kohlenbach);
  CHECK(tree.internal(seq_empty()));
  for (int x = 0; x < 8; ++x) CHECK(tree.leaf(seq_add(0, x)));
  CHECK(barrec::reference_phi(tree, G, seq_empty()) == 6);
}

TEST_CASE("psi_trunc2.term is the depth-2 truncated candidate") {
  TermPtr p = example("psi_trunc2.term");
  CHECK(in_language(p, tag("t")));
  CHECK(alpha_equal(p, separation::make_truncated_candidate(2)));
  separation::SeparationReport r =
      separation::run_separation_term(p, barrec::standard_accel());
  CHECK(r.pass);
  CHECK(r.c != r.K);
}

TEST_CASE("corpus generation is deterministic and stays in its language") {
  for (const char* lang : {"b", "pcf", "pcf+byval", "t", "t+min", "w"}) {
    LangTag t = tag(lang);
    auto a = corpus::generate(t, 11, 20);
    auto b = corpus::generate(t, 11, 20);
    auto c = corpus::generate(t, 12, 20);
    REQUIRE(a.size() == 20);
    bool same = true, differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      same = same && alpha_equal(a[i], b[i]);
      differs = differs || !alpha_equal(a[i], c[i]);
      CHECK(is_closed(a[i]));
      CHECK(type_equal(a[i]->type, ty_nat()));
      CHECK(in_language(a[i], t));
    }
    CHECK(same);
    CHECK(differs);
  }
  CHECK_THROWS(corpus::generate(tag("t0str"), 0, 1));
}
