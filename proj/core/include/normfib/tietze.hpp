#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normfib/group.hpp"

namespace normfib {

// One replayable move. Indices refer to the state at application time; every
// touched relator is freely and cyclically reduced afterwards, and replay
// begins by reducing all relators of the input.
struct TietzeOp {
  enum class Kind {
    Rotate,     // rel[i] <- rot_k(rel[i])
    InvertRel,  // rel[i] <- rel[i]^-1
    MultRight,  // rel[i] <- rel[i] * rot_k(rel[j])^s       (i != j)
    DropRel,    // rel[i] empty or a cyclic rotate/invert duplicate of another
    Eliminate,  // generator g occurs exactly once in rel[i]; substitute it away
    Nielsen,    // generator g <- g * y^s (side=1) or y^s * g (side=0), y != g
  };
  Kind kind;
  int i = -1;    // relator index (or defining relator for Eliminate)
  int j = -1;    // second relator / generator y
  int g = -1;    // generator for Eliminate/Nielsen
  int s = 1;     // sign
  int k = 0;     // rotation
  int side = 1;  // Nielsen side

  bool operator==(const TietzeOp& o) const = default;
};

std::string op_to_string(const TietzeOp& op);
TietzeOp op_from_string(const std::string& s);

// Applies the log to p; throws std::invalid_argument on an illegal move.
// Generator names of the result are the default names for its final rank.
Presentation replay_tietze(const Presentation& p, const std::vector<TietzeOp>& log);

struct SimplifyOptions {
  long long budget = 4'000'000;  // candidate evaluations across all passes
  std::uint64_t seed = 1;        // drives randomized escape moves only
  int restarts = 2;              // randomized escapes after a fixed point
  int max_relator_for_subword = 48;
};

struct SimplifyResult {
  Presentation pres;
  std::vector<TietzeOp> log;  // replay_tietze(input, log) == pres, byte-exact
};

// Greedy Tietze/Nielsen length reduction; a semi-decision procedure that
// returns the best presentation reached within budget.
SimplifyResult simplify_presentation(const Presentation& p, const SimplifyOptions& opts = {});

struct SurfaceCertificate {
  bool certified = false;   // one-relator closed-surface form was reached
  bool orientable = false;
  int genus = 0;            // orientable genus, or crosscap count when not
  bool is_free = false;     // no relators after simplification
  int free_rank = 0;
  Presentation simplified;
  std::vector<TietzeOp> log;
};

// Positive certificates only: the simplified presentation must have a single
// relator using every generator exactly twice whose polygon gluing has one
// vertex class. Orientable iff each generator occurs once with each sign.
SurfaceCertificate surface_group_certificate(const Presentation& p,
                                             const SimplifyOptions& opts = {});

}  // namespace normfib
