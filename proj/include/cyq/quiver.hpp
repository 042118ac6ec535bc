#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cyq {

struct Arrow {
  std::string id;
  int source = 0;
  int target = 0;
  int degree = 0;
  // Index of the dual arrow in a double quiver, -1 in a half quiver.
  int dual = -1;
  bool primal = true;

  bool operator==(const Arrow&) const = default;
};

/// A finite graded quiver together with the Calabi-Yau dimension it is
/// meant for. `half` distinguishes Q (arrows in degrees floor((3-d)/2)..0)
/// from the double quiver Q-bar, whose arrows come in dual pairs.
struct GradedQuiver {
  int d = 3;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  bool half = true;

  int vertex_index(const std::string& id) const;
  std::optional<int> find_arrow(const std::string& id) const;

  bool operator==(const GradedQuiver&) const = default;
};

/// dims(i, j)[k] = dim Ext^k(E_i, E_j) for 0 <= k <= d.
struct ExtTable {
  int d = 3;
  std::vector<std::string> vertices;
  std::map<std::pair<int, int>, std::vector<int>> dims;

  int dim(int i, int j, int k) const;
  void set(int i, int j, std::vector<int> row);

  bool operator==(const ExtTable& other) const;
};

// Key (i, j) with i < j; true means the x-type middle-degree arrows point
// i -> j. Pairs not present default to i -> j.
using OrientationChoice = std::map<std::pair<int, int>, bool>;

struct Violation {
  std::string kind;
  int i = -1;
  int j = -1;
  int k = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

int floor_div(int a, int b);
// Lowest arrow degree allowed in Q: floor((3-d)/2).
int min_half_degree(int d);
// The self-dual degree (2-d)/2 for even d; nullopt for odd d.
std::optional<int> middle_degree(int d);

ValidationReport validate_ext_table(const ExtTable& table);
ValidationReport validate_quiver(const GradedQuiver& quiver);

GradedQuiver quiver_from_ext_table(const ExtTable& table,
                                   const OrientationChoice& orient = {});
GradedQuiver double_quiver(const GradedQuiver& quiver);
ExtTable ext_table_from_quiver(const GradedQuiver& qbar);

std::string dual_arrow_id(const std::string& primal_id);

}  // namespace cyq
