#pragma once

#include <optional>
#include <random>
#include <vector>

#include "cubemill/dual.hpp"

namespace cubemill {

struct EdgePath {
  std::vector<VertexId> v;

  std::size_t length() const { return v.empty() ? 0 : v.size() - 1; }
  bool is_loop() const { return !v.empty() && v.front() == v.back(); }
  friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

bool valid_path(const DualComplex& d, const EdgePath& p);
int path_height(const DualComplex& d, const EdgePath& p);
EdgePath reversed(const EdgePath& p);

enum class MoveKind { Rotate, BacktrackRemoval, SquareSlide, InsertDetour };

const char* to_string(MoveKind k);

// Rotate(k): a loop (v0..vs) becomes (vk..vs, v1..vk).
// BacktrackRemoval(i): v(i-1) == v(i+1); drops v(i) and v(i+1).
// SquareSlide(i, w, square): v(i-1), v(i), v(i+1), w are the corners of the
//   stored dual square, v(i) opposite w; v(i) is replaced by w.
// InsertDetour(i, w0..wm): w0 == v(i); inserts w1..wm, w(m-1)..w0 after v(i).
struct Move {
  MoveKind kind = MoveKind::BacktrackRemoval;
  std::size_t index = 0;
  VertexId replacement = 0;
  std::vector<VertexId> square;  // corner array of the witnessing square
  std::vector<VertexId> detour;

  friend bool operator==(const Move&, const Move&) = default;
};

struct HomotopyCertificate {
  std::vector<Move> moves;
};

// nullopt when the move does not apply.
std::optional<EdgePath> apply_move(const DualComplex& d, const EdgePath& p, const Move& m);
std::optional<EdgePath> replay(const DualComplex& d, const EdgePath& initial, const std::vector<Move>& moves);
bool verify_certificate(const DualComplex& d, const EdgePath& initial, const HomotopyCertificate& c,
                        const EdgePath& claimed_final);

// A run of consecutive vertices on a dual mirror. For loops indices wrap
// modulo the length.
struct Crossing {
  int mirror = 0;
  std::size_t start = 0;
  std::size_t length = 0;  // number of vertices in the run
};

struct MirrorCrossings {
  int count = 0;
  std::vector<Crossing> subpaths;
};

// Throws NonSeparatingMirror when the mirror has a framing it does not separate.
MirrorCrossings crossings(const DualComplex& d, const EdgePath& p, int mirror);

struct CrossingProfile {
  std::vector<int> per_mirror;
  int total = 0;
  std::vector<Crossing> crossings;
};

CrossingProfile crossing_profile(const DualComplex& d, const EdgePath& p);

// Least top cell whose dual tile contains every vertex of p.
std::optional<CellId> containing_tile(const DualComplex& d, const EdgePath& p);

bool is_efficient(const DualComplex& d, const EdgePath& p);

struct EfficientResult {
  EdgePath path;
  HomotopyCertificate certificate;
};

// Throws NotInTile.
EfficientResult make_efficient(const DualComplex& d, const EdgePath& p);
HomotopyCertificate contract_in_tile(const DualComplex& d, const EdgePath& loop);

struct Bridge {
  EdgePath path;
  std::size_t start = 0;  // offset inside the path it was taken from
  int mirror = 0;         // least supporting mirror
};

bool is_bridge(const DualComplex& d, const EdgePath& p);
// Throws NotABridge.
Bridge minimal_bridge(const DualComplex& d, const EdgePath& p);
// Throws CarrierViolation.
EdgePath project_bridge(const DualComplex& d, const EdgePath& q, int mirror);

struct SurgeryResult {
  EdgePath p1;
  EdgePath p2;
  std::vector<Move> moves;  // p to p1 · p2
  std::size_t split = 0;    // p1 ends at this index of the moved loop
  int mirror = 0;
  Bridge bridge;
  EdgePath projection;
};

// Throws NoCrossing.
SurgeryResult surgery_step(const DualComplex& d, const EdgePath& loop);

struct ContractionNode {
  EdgePath loop;
  std::vector<Move> moves;
  std::optional<std::size_t> split;
  std::vector<ContractionNode> children;  // none, or the two halves

  std::size_t depth() const;
  std::size_t move_count() const;
};

// Throws Unsupported when some mirror does not separate.
ContractionNode contract_loop(const DualComplex& d, const EdgePath& loop);
bool verify_contraction(const DualComplex& d, const ContractionNode& node);

// Random walk of at most max_length/2 steps closed up along a shortest path
// back to its start.
EdgePath random_loop(const DualComplex& d, std::mt19937_64& rng, std::size_t max_length);

}  // namespace cubemill
