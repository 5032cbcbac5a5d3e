// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, details on stderr.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "support/oracles.hpp"
#include "support/random_maps.hpp"
#include "tht/fixtures.hpp"
#include "tht/folding.hpp"
#include "tht/torus.hpp"
#include "tht/verifier.hpp"

using namespace tht;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

struct Line {
  int id;
  bool pass;
  std::string text;
  bool operator<(const Line& o) const { return id < o.id; }
};
std::vector<Line> results;

void report(int id, const std::string& title, Outcome& o, double secs) {
  std::ostringstream line;
  line << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << o.detail.str() << std::fixed
       << std::setprecision(2) << secs << " s)";
  std::cerr << "[done] " << line.str() << std::endl;
  results.push_back({id, o.pass, line.str()});
}

std::int64_t chi_by_count(const TwoComplex& y) {
  return static_cast<std::int64_t>(y.skeleton.vertex_count()) - static_cast<std::int64_t>(y.skeleton.edge_count()) +
         static_cast<std::int64_t>(y.faces.size());
}

// Word-level action of an immersion of a sub-rose; letters outside H are an error.
Word apply_on_words(const GraphMap& psi, const std::vector<std::string>& basis, const Word& w) {
  Word out;
  for (int x : w) {
    EdgeId e = *psi.domain.find_edge(basis[std::abs(x) - 1]);
    if (!psi.support.edges[e]) throw std::runtime_error("word leaves H");
    Word img;
    for (Step s : psi.edge_image[e].steps) {
      const std::string& name = psi.codomain.edge_name(s.edge);
      int letter = static_cast<int>(std::find(basis.begin(), basis.end(), name) - basis.begin()) + 1;
      img.push_back(s.forward ? letter : -letter);
    }
    if (x < 0) img = word_inverse(img);
    out.insert(out.end(), img.begin(), img.end());
  }
  return free_reduce(out);
}

bool height_is(const Height& h, int v) { return h.kind == Height::Kind::Finite && h.value == v; }
bool height_infinite(const Height& h) { return h.kind == Height::Kind::Infinite; }

struct Options {
  int max_faces = 6;
  int isolated_max_faces = 6;
  int isolated_cap = 2;
  int jobs = 0;
  int random_rounds = 10000;
};

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Acceptance criteria"};
  app.add_option("--max-cells", opt.max_faces, "Face bound for the audits")->check(CLI::Range(1, 10));
  app.add_option("--isolated-max-cells", opt.isolated_max_faces, "Face bound for the isolated-edge re-run");
  app.add_option("--isolated-cap", opt.isolated_cap, "Isolated edges added");
  app.add_option("--jobs", opt.jobs, "Enumeration threads (0 = hardware)");
  app.add_option("--random-rounds", opt.random_rounds, "Random maps for the folding check");
  CLI11_PARSE(app, argc, argv);
  if (opt.jobs <= 0) opt.jobs = std::max(1u, std::thread::hardware_concurrency());

  // 1
  {
    auto t0 = Clock::now();
    Outcome o;
    std::map<std::string, Certificate> certs;
    for (const char* n : {"A", "B", "C", "D", "E"}) certs[n] = decide_negative_immersions(fixture(n));
    o.require(height_is(certs["A"].height, 1), "FIX-A height");
    o.require(height_infinite(certs["B"].height), "FIX-B height");
    o.require(height_is(certs["C"].height, 2), "FIX-C height");
    o.require(height_infinite(certs["D"].height), "FIX-D height");
    o.require(height_is(directed_height_general(fixture("E")), 1), "FIX-E height");
    o.require(certs["E"].kind == Certificate::Kind::NotInjective && !certs["E"].pi1_injective, "FIX-E pi1 verdict");
    double secs = seconds_since(t0);
    o.require(secs < 1.0, "runtime");
    report(1, "fixture heights (1, inf, 2, inf, 1), FIX-E not pi1-injective", o, secs);
  }

  // 2
  {
    auto t0 = Clock::now();
    Outcome o;
    auto corpus = rose_corpus(3, 2, false);
    std::size_t checks = 0;
    for (const auto& entry : corpus) {
      DomainFiltration df = domain_filtration(entry.psi);
      for (int i = 0; i <= 4; ++i) {
        const Subgraph& d = df.domains[std::min<std::size_t>(i + 1, df.domains.size() - 1)];
        ++checks;
        o.require(brute_force_preimage(entry.psi, i).is_forest == is_forest(entry.psi.domain, d),
                  entry.name + " i=" + std::to_string(i));
      }
    }
    double secs = seconds_since(t0);
    o.require(secs < 60, "runtime");
    o.detail << corpus.size() << " instances, " << checks << " comparisons, ";
    report(2, "filtration vs brute-force preimage", o, secs);
  }

  auto corpus = rose_corpus(3, 2, true);
  std::vector<const CorpusEntry*> finite, infinite;
  std::map<std::string, Certificate> cert_of;
  for (const auto& entry : corpus) {
    Certificate c = decide_negative_immersions(entry.psi);
    (c.kind == Certificate::Kind::NegativeImmersions ? finite : infinite).push_back(&entry);
    cert_of.emplace(entry.name, std::move(c));
  }
  std::cerr << "corpus: " << corpus.size() << " instances, " << finite.size() << " finite height, "
            << infinite.size() << " infinite\n";

  // 3, 6, 7, 10 share one enumeration per instance.
  {
    Outcome o3, o6, o7, o10;
    double slowest = 0, total = 0, total_ext = 0;
    std::size_t ys = 0, extensions = 0, malnormal_instances = 0;
    for (const CorpusEntry* entry : finite) {
      const Certificate& cert = cert_of.at(entry->name);
      const Rational c = cert.negative->c;
      MappingTorus x = build_mapping_torus(entry->psi);
      auto t0 = Clock::now();
      EnumerationResult r = enumerate_immersions(entry->psi, opt.max_faces, opt.jobs);
      const bool forest = brute_force_preimage(entry->psi, 1).is_forest;
      if (forest) ++malnormal_instances;
      o7.require(!forest || cert.negative->malnormal_c.has_value(), entry->name + " lacks c'");
      for (const ImmersedComplex& ic : r.complexes) {
        ++ys;
        const int faces = static_cast<int>(ic.face_count());
        const std::int64_t chi = chi_by_count(ic.y);
        ComplexChecks checks = complex_checks(ic.y);
        o3.require(faces >= 1 && faces <= opt.max_faces, entry->name + " face count");
        o3.require(checks.connected && checks.collapsed && checks.isolated_edges.empty(), entry->name + " Y shape");
        o3.require(is_combinatorial_immersion(ic.y, x.complex, ic.to_x), entry->name + " Y not immersed");
        o3.require(Rational(chi) <= -c * faces, entry->name + " bound " + ic.canonical);
        GraphOfSpaces gs = decompose(ic.y);
        o6.require(Rational(gs.chi_outgoing) >= Rational(chi) / c, entry->name + " splitting " + ic.canonical);
        if (forest && cert.negative->malnormal_c)
          o7.require(Rational(chi) <= -*cert.negative->malnormal_c * faces, entry->name + " c' bound " + ic.canonical);
      }
      double secs = seconds_since(t0);
      slowest = std::max(slowest, secs);
      total += secs;
      o3.require(secs < 600, entry->name + " runtime");

      if (opt.isolated_cap > 0) {
        auto t1 = Clock::now();
        ExtensionSummary s = check_isolated_edge_extension(entry->psi, r, c, std::min(opt.isolated_max_faces, opt.max_faces),
                                                           opt.isolated_cap);
        extensions += s.checked;
        o10.require(s.failures == 0, entry->name + " isolated-edge extension");
        total_ext += seconds_since(t1);
      }
    }
    o3.detail << finite.size() << " instances, K=" << opt.max_faces << ", " << ys << " complexes, slowest "
              << std::setprecision(1) << std::fixed << slowest << " s, ";
    report(3, "chi(Y) <= -c|Y| on every enumerated Y", o3, total);
    o6.detail << ys << " complexes, ";
    report(6, "splitting bound chi(O_Y) >= chi(Y)/c", o6, 0);
    o7.detail << malnormal_instances << " instances with a forest preimage, ";
    report(7, "malnormal constant emitted and audited", o7, 0);
    o10.detail << "cap " << opt.isolated_cap << ", K=" << std::min(opt.isolated_max_faces, opt.max_faces) << ", "
               << extensions << " extended complexes, ";
    o10.require(opt.isolated_cap > 0, "extension disabled");
    report(10, "bound with isolated edges allowed", o10, total_ext);
  }

  // 4
  {
    auto t0 = Clock::now();
    Outcome o;
    for (const CorpusEntry* entry : infinite) {
      const Certificate& cert = cert_of.at(entry->name);
      o.require(cert.kind == Certificate::Kind::ZeroEuler && cert.witness.has_value(), entry->name + " no witness");
      if (!cert.witness) continue;
      const TwoComplex& y = cert.witness->y;
      ComplexChecks checks = complex_checks(y);
      o.require(chi_by_count(y) == 0 && checks.chi == 0, entry->name + " chi");
      o.require(!y.faces.empty() && checks.connected, entry->name + " shape");
      o.require(checks.collapsed && checks.isolated_edges.empty(), entry->name + " collapsed");
      o.require(is_combinatorial_immersion(y, build_mapping_torus(entry->psi).complex, cert.witness->to_x),
                entry->name + " immersion");
    }
    o.detail << infinite.size() << " instances, ";
    report(4, "zero Euler characteristic witnesses", o, seconds_since(t0));
  }

  // 5
  {
    auto t0 = Clock::now();
    Outcome o;
    for (const CorpusEntry* entry : finite) {
      const Rational& c = cert_of.at(entry->name).negative->c;
      o.require(c > 0 && c < 1, entry->name + " c out of range");
    }
    for (const char* n : {"A", "C"}) {
      Certificate cert = decide_negative_immersions(fixture(n));
      o.require(cert.negative && cert.negative->c > 0 && cert.negative->c < 1, std::string("FIX-") + n);
    }
    // c = 1 / (2 (m+1) |psi|^m N) with N counted by hand in the Cayley tree.
    Rational a(1, 2 * (1 + 1) * 1 * testing::reduced_words(2, 1));
    Rational cc(1, 2 * (2 + 1) * 1 * testing::reduced_words(3, 1));
    o.require(a == Rational(1, 16) && cc == Rational(1, 36), "hand derivation");
    o.require(decide_negative_immersions(fixture("A")).negative->c == a, "FIX-A c");
    o.require(decide_negative_immersions(fixture("C")).negative->c == cc, "FIX-C c");
    o.detail << "FIX-A 1/16, FIX-C 1/36, ";
    report(5, "0 < c < 1 and exact fixture constants", o, seconds_since(t0));
  }

  // 8
  {
    auto t0 = Clock::now();
    Outcome o;
    std::mt19937_64 rng(20240611);
    int injective = 0;
    for (int round = 0; round < opt.random_rounds; ++round) {
      GraphMap m = testing::random_total_map(rng);
      Factorization f = fold_to_immersion(m);
      o.require(factorization_commutes(f), "theta o rho differs, round " + std::to_string(round));
      o.require(validate_map(f.theta).immersion, "theta not an immersion, round " + std::to_string(round));
      o.require(testing::euler_oracle(f) == f.pi1_injective, "pi1 verdict, round " + std::to_string(round));
      injective += f.pi1_injective;
    }
    o.detail << opt.random_rounds << " maps, " << injective << " pi1-injective, ";
    report(8, "Stallings factorization on random maps", o, seconds_since(t0));
  }

  // 9
  {
    auto t0 = Clock::now();
    Outcome o;
    std::size_t proper = 0;
    for (const CorpusEntry* entry : infinite) {
      const Certificate& cert = cert_of.at(entry->name);
      o.require(cert.reducibility.has_value(), entry->name + " no reducibility witness");
      if (!cert.reducibility) continue;
      const ReducibilityWitness& r = *cert.reducibility;
      o.require(r.verified, entry->name + " not verified");
      o.require(!r.generators.empty(), entry->name + " trivial H'");
      proper += r.proper;
      CoreGraph h = core_graph_of_words(static_cast<int>(r.basis.size()), r.generators);
      for (const Word& w : r.generators) {
        Word image = w;
        for (int k = 0; k < r.n; ++k) image = apply_on_words(entry->psi, r.basis, image);
        Word conj = free_reduce(word_concat(word_concat(r.g, image), word_inverse(r.g)));
        o.require(is_member(h, conj), entry->name + " psi^n(H') not in g^-1 H' g");
      }
    }
    o.detail << infinite.size() << " instances, " << proper << " with H' of smaller rank, ";
    report(9, "reducibility witnesses", o, seconds_since(t0));
  }

  std::sort(results.begin(), results.end());
  for (const Line& l : results) std::cout << l.text << "\n";
  bool all = std::all_of(results.begin(), results.end(), [](const Line& l) { return l.pass; });
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << std::endl;
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
