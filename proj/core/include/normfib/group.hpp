#pragma once

#include <optional>
#include <string>
#include <vector>

#include "normfib/intmatrix.hpp"

namespace normfib {

// Letters are nonzero ints: +(i+1) is generator i, -(i+1) its inverse.
class Word {
 public:
  Word() = default;
  explicit Word(const std::vector<int>& letters);

  static Word letter(int signed_letter);

  const std::vector<int>& letters() const { return w_; }
  int size() const { return int(w_.size()); }
  bool empty() const { return w_.empty(); }

  Word inverse() const;
  Word operator*(const Word& o) const;
  bool operator==(const Word& o) const { return w_ == o.w_; }
  bool operator<(const Word& o) const { return w_ < o.w_; }

  void append(int signed_letter);  // with free reduction
  Word cyclically_reduced() const;

  // Exponent sum per generator.
  std::vector<Int> exponent_vector(int ngens) const;

 private:
  std::vector<int> w_;
};

struct Presentation {
  std::vector<std::string> gens;
  std::vector<Word> rels;

  int ngens() const { return int(gens.size()); }
  // Total relator length.
  int total_length() const;

  bool operator==(const Presentation& o) const { return gens == o.gens && rels == o.rels; }
};

// Names g0..g(n-1) as a..z when n <= 26, else x0,x1,...
std::vector<std::string> default_gen_names(int n);

std::string word_to_string(const Word& w, const std::vector<std::string>& gens);
Word word_from_string(const std::string& s, const std::vector<std::string>& gens);

// Text format: "pres v1", "gens a b ...", one "rel <word>" line per relator.
Presentation parse_presentation(const std::string& text);
std::string serialize_presentation(const Presentation& p);

// rows = relators, cols = generators, entries = exponent sums
IntMatrix relation_matrix(const Presentation& p);
AbelianInvariants abelianization(const Presentation& p);

// Right action of generators on {0..degree-1}; coset 0 is the subgroup.
struct CosetTable {
  int degree = 0;
  std::vector<std::vector<int>> act;      // act[g][c]
  std::vector<std::vector<int>> act_inv;  // act_inv[g][c]

  int apply(int coset, int signed_letter) const {
    return signed_letter > 0 ? act[signed_letter - 1][coset] : act_inv[-signed_letter - 1][coset];
  }
  int apply_word(int coset, const Word& w) const {
    for (int l : w.letters()) coset = apply(coset, l);
    return coset;
  }
  void finish_inverses();  // fill act_inv from act
};

// Permutations in image notation: images[g][point]. Validates that the
// relators act trivially and the action is transitive.
CosetTable table_from_perms(const Presentation& p, const std::vector<std::vector<int>>& images);

// Text format: "perm v1", "deg <d>", one "perm <gen> <cycles>" line per
// generator, cycles 1-based with unlisted points fixed.
CosetTable parse_coset_table(const std::string& text, const Presentation& p);
std::string serialize_coset_table(const CosetTable& t, const Presentation& p);

struct SchreierData {
  CosetTable table;
  std::vector<Word> transversal;           // in the big group's letters
  std::vector<std::vector<int>> sgen_id;   // [g][c] -> Schreier generator id, -1 on tree edges
  std::vector<std::pair<int, int>> sgen_info;  // id -> (coset, gen)
  int nsgens = 0;

  // Rewrites a big-group word read from `start` into Schreier letters.
  Word rewrite(int start, const Word& w) const;
};

SchreierData schreier_data(const Presentation& p, const CosetTable& t);

struct SubgroupPresentation {
  Presentation pres;  // generators are the Schreier generators, in id order
  SchreierData schreier;
};

SubgroupPresentation reidemeister_schreier(const Presentation& p, const CosetTable& t);

// H1 of the degree-d cover of the presentation 2-complex described by a coset
// table; equals the abelianization of the corresponding subgroup.
AbelianInvariants cover_homology(const Presentation& p, const CosetTable& t);

struct CoverDescription {
  CosetTable table;                 // over the input presentation's generators
  std::vector<std::vector<Int>> hom;  // per generator, image in the deck group
  AbelianInvariants homology;
};

// Connected cyclic covers: surjections pi_1 -> Z/n up to automorphism of Z/n
// (same-kernel deduplication).
std::vector<CoverDescription> enumerate_cyclic_covers(const Presentation& p, int n);

// Regular covers with deck group Z/m1 x ... x Z/mk, deduped by kernel.
std::vector<CoverDescription> enumerate_regular_covers(const Presentation& p,
                                                       const std::vector<int>& target);

// Table over the base group for the composite cover: a degree-n cyclic cover
// (values per Schreier generator) sitting above the subgroup of `sd`.
CosetTable induced_table(const SchreierData& sd, const std::vector<Int>& values, int n);

// Orbit of (0,0) under the product action; degree divides t1.degree*t2.degree.
CosetTable intersect_subgroups(int ngens, const CosetTable& t1, const CosetTable& t2);

}  // namespace normfib
