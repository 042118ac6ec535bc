#include "cyq/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

#include "cyq/error.hpp"

namespace cyq {

int GradedQuiver::vertex_index(const std::string& id) const {
  auto it = std::find(vertices.begin(), vertices.end(), id);
  if (it == vertices.end()) {
    throw Error(ErrorCode::invalid_quiver, "unknown vertex '" + id + "'");
  }
  return static_cast<int>(it - vertices.begin());
}

std::optional<int> GradedQuiver::find_arrow(const std::string& id) const {
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    if (arrows[a].id == id) return static_cast<int>(a);
  }
  return std::nullopt;
}

int ExtTable::dim(int i, int j, int k) const {
  if (k < 0 || k > d) return 0;
  auto it = dims.find({i, j});
  if (it == dims.end() || k >= static_cast<int>(it->second.size())) return 0;
  return it->second[k];
}

void ExtTable::set(int i, int j, std::vector<int> row) {
  dims[{i, j}] = std::move(row);
}

bool ExtTable::operator==(const ExtTable& other) const {
  if (d != other.d || vertices != other.vertices) return false;
  const int n = static_cast<int>(vertices.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k <= d; ++k) {
        if (dim(i, j, k) != other.dim(i, j, k)) return false;
      }
    }
  }
  return true;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t v = 0; v < violations.size(); ++v) {
    if (v) out << "; ";
    out << violations[v].kind << ": " << violations[v].message;
  }
  return out.str();
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int min_half_degree(int d) { return floor_div(3 - d, 2); }

std::optional<int> middle_degree(int d) {
  if (d % 2 != 0) return std::nullopt;
  return (2 - d) / 2;
}

namespace {

std::string triple(const std::vector<std::string>& vs, int i, int j, int k) {
  std::ostringstream out;
  out << "(" << vs[i] << "," << vs[j] << "," << k << ")";
  return out.str();
}

bool valid_identifier(const std::string& id) {
  if (id.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(id[0])) || id[0] == '_')) {
    return false;
  }
  for (std::size_t c = 0; c < id.size(); ++c) {
    const char ch = id[c];
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
        ch == ':' || ch == '\'' || ch == '>' || ch == '.') {
      continue;
    }
    if (ch == '-' && ((c > 0 && id[c - 1] == ':') ||
                      (c + 1 < id.size() && id[c + 1] == '>'))) {
      continue;
    }
    return false;
  }
  return id.rfind("alpha_", 0) != 0 && id.rfind("beta_", 0) != 0;
}

}  // namespace

ValidationReport validate_ext_table(const ExtTable& table) {
  ValidationReport report;
  const int d = table.d;
  const auto& vs = table.vertices;
  const int n = static_cast<int>(vs.size());
  auto add = [&](std::string kind, int i, int j, int k, std::string msg) {
    report.violations.push_back({std::move(kind), i, j, k, std::move(msg)});
  };
  if (d < 2) {
    add("dimension", -1, -1, -1,
        "Calabi-Yau dimension must be at least 2, got " + std::to_string(d));
    return report;
  }
  for (const auto& [key, row] : table.dims) {
    const auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n || j >= n) {
      add("unknown vertex", i, j, -1, "entry refers to a vertex outside the table");
      continue;
    }
    if (static_cast<int>(row.size()) != d + 1) {
      add("row length", i, j, -1,
          "dims for (" + vs[i] + "," + vs[j] + ") must have d+1 = " +
              std::to_string(d + 1) + " entries");
    }
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] < 0) {
        add("negative", i, j, static_cast<int>(k),
            "negative dimension at " + triple(vs, i, j, static_cast<int>(k)));
      }
    }
  }
  if (!report.ok()) return report;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int e0 = table.dim(i, j, 0);
      if (i == j && e0 != 1) {
        add("identity", i, j, 0,
            "Ext^0(E_i,E_i) must be one-dimensional at " + triple(vs, i, j, 0));
      }
      if (i != j && e0 != 0) {
        add("off-diagonal Ext^0", i, j, 0,
            "Ext^0(E_i,E_j) must vanish for i != j at " + triple(vs, i, j, 0));
      }
      for (int k = 0; k <= d; ++k) {
        const int mirror = table.dim(j, i, d - k);
        // Report each mismatched pair of entries once.
        if (table.dim(i, j, k) != mirror &&
            std::make_tuple(i, j, k) < std::make_tuple(j, i, d - k)) {
          add("CY symmetry", i, j, k,
              "dim Ext^k(E_i,E_j) != dim Ext^(d-k)(E_j,E_i) at " +
                  triple(vs, i, j, k) + ": " + std::to_string(table.dim(i, j, k)) +
                  " vs " + std::to_string(mirror));
        }
      }
    }
  }
  if (d % 2 == 0) {
    for (int i = 0; i < n; ++i) {
      const int mid = table.dim(i, i, d / 2);
      if (mid % 2 != 0) {
        add("middle dimension odd", i, i, d / 2,
            "dim Ext^(d/2)(E_i,E_i) must be even at " + triple(vs, i, i, d / 2));
      } else if (mid >= 4) {
        add("forbidden 2-cycle", i, i, d / 2,
            "dim Ext^(d/2)(E_i,E_i) = " + std::to_string(mid) +
                " yields two middle-degree loops at " + vs[i] +
                ", a forbidden 2-cycle");
      }
    }
  }
  return report;
}

ValidationReport validate_quiver(const GradedQuiver& q) {
  ValidationReport report;
  auto add = [&](std::string kind, std::string msg) {
    report.violations.push_back({std::move(kind), -1, -1, -1, std::move(msg)});
  };
  const int d = q.d;
  if (d < 2) {
    add("dimension", "Calabi-Yau dimension must be at least 2, got " +
                         std::to_string(d));
    return report;
  }
  const int n = static_cast<int>(q.vertices.size());
  std::set<std::string> seen_vertices;
  for (const auto& v : q.vertices) {
    if (!seen_vertices.insert(v).second) add("duplicate vertex", "vertex '" + v + "' repeated");
  }
  std::set<std::string> seen;
  for (const auto& a : q.arrows) {
    if (!seen.insert(a.id).second) add("duplicate arrow", "arrow id '" + a.id + "' repeated");
    if (!valid_identifier(a.id)) add("arrow id", "arrow id '" + a.id + "' is not a valid identifier");
    if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n) {
      add("endpoint", "arrow '" + a.id + "' has an endpoint outside the vertex set");
    }
  }
  if (!report.ok()) return report;

  if (q.half) {
    const int lo = min_half_degree(d);
    for (const auto& a : q.arrows) {
      if (a.degree < lo || a.degree > 0) {
        add("degree range", "arrow '" + a.id + "' has degree " +
                                std::to_string(a.degree) + " outside [" +
                                std::to_string(lo) + ", 0]");
      }
    }
    if (auto mid = middle_degree(d)) {
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        for (std::size_t b = a + 1; b < q.arrows.size(); ++b) {
          const auto& x = q.arrows[a];
          const auto& y = q.arrows[b];
          if (x.degree == *mid && y.degree == *mid && x.source == y.target &&
              x.target == y.source) {
            add("forbidden 2-cycle", "arrows '" + x.id + "' and '" + y.id +
                                         "' form a 2-cycle in degree " +
                                         std::to_string(*mid));
          }
        }
      }
    }
    return report;
  }

  const int m = static_cast<int>(q.arrows.size());
  for (int a = 0; a < m; ++a) {
    const auto& x = q.arrows[a];
    if (x.dual < 0 || x.dual >= m || x.dual == a) {
      add("dual pairing", "arrow '" + x.id + "' has no dual partner");
      continue;
    }
    const auto& y = q.arrows[x.dual];
    if (y.dual != a) add("dual pairing", "dual of '" + x.id + "' is not paired back");
    if (x.primal == y.primal) {
      add("dual pairing", "arrows '" + x.id + "' and '" + y.id +
                              "' must be one primal and one dual");
    }
    if (y.degree != 2 - d - x.degree) {
      add("dual degree", "deg('" + x.id + "') + deg('" + y.id + "') must be 2-d");
    }
    if (y.source != x.target || y.target != x.source) {
      add("dual endpoints", "dual of '" + x.id + "' must reverse its endpoints");
    }
  }
  if (!report.ok()) return report;
  GradedQuiver half{d, q.vertices, {}, true};
  for (const auto& a : q.arrows) {
    if (a.primal) half.arrows.push_back({a.id, a.source, a.target, a.degree, -1, true});
  }
  auto sub = validate_quiver(half);
  for (auto& v : sub.violations) report.violations.push_back(std::move(v));
  return report;
}

std::string dual_arrow_id(const std::string& primal_id) {
  if (primal_id.rfind("x:", 0) == 0) return "xi:" + primal_id.substr(2);
  return "xi:" + primal_id;
}

GradedQuiver quiver_from_ext_table(const ExtTable& table,
                                   const OrientationChoice& orient) {
  auto report = validate_ext_table(table);
  if (!report.ok()) throw Error(ErrorCode::invalid_quiver, report.summary());
  const int d = table.d;
  const int n = static_cast<int>(table.vertices.size());
  GradedQuiver q{d, table.vertices, {}, true};
  auto emit = [&](int i, int j, int r, int count) {
    for (int c = 1; c <= count; ++c) {
      std::string id = "x:" + table.vertices[i] + "->" + table.vertices[j] + ":" +
                       std::to_string(r) + ":" + std::to_string(c);
      q.arrows.push_back({std::move(id), i, j, r, -1, true});
    }
  };
  const auto mid = middle_degree(d);
  // Regular degrees: odd d covers (3-d)/2..0, even d covers (4-d)/2..0.
  const int lowest_regular = mid ? *mid + 1 : (3 - d) / 2;
  for (int r = 0; r >= lowest_regular; --r) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) emit(i, j, r, table.dim(i, j, 1 - r));
    }
  }
  if (mid) {
    const int k = d / 2;
    for (int i = 0; i < n; ++i) emit(i, i, *mid, table.dim(i, i, k) / 2);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        auto it = orient.find({i, j});
        const bool forward = it == orient.end() || it->second;
        if (forward) {
          emit(i, j, *mid, table.dim(i, j, k));
        } else {
          emit(j, i, *mid, table.dim(j, i, k));
        }
      }
    }
  }
  return q;
}

GradedQuiver double_quiver(const GradedQuiver& q) {
  if (!q.half) {
    throw Error(ErrorCode::invalid_quiver, "double_quiver expects a half quiver");
  }
  auto report = validate_quiver(q);
  if (!report.ok()) throw Error(ErrorCode::invalid_quiver, report.summary());
  GradedQuiver out{q.d, q.vertices, {}, false};
  const int m = static_cast<int>(q.arrows.size());
  for (int a = 0; a < m; ++a) {
    Arrow x = q.arrows[a];
    x.dual = m + a;
    x.primal = true;
    out.arrows.push_back(std::move(x));
  }
  for (int a = 0; a < m; ++a) {
    const Arrow& x = q.arrows[a];
    out.arrows.push_back(
        {dual_arrow_id(x.id), x.target, x.source, 2 - q.d - x.degree, a, false});
  }
  auto check = validate_quiver(out);
  if (!check.ok()) throw Error(ErrorCode::invalid_quiver, check.summary());
  return out;
}

ExtTable ext_table_from_quiver(const GradedQuiver& qbar) {
  if (qbar.half) {
    throw Error(ErrorCode::invalid_argument,
                "ext_table_from_quiver expects a double quiver");
  }
  ExtTable t;
  t.d = qbar.d;
  t.vertices = qbar.vertices;
  const int n = static_cast<int>(qbar.vertices.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<int> row(qbar.d + 1, 0);
      if (i == j) {
        row[0] = 1;
        row[qbar.d] = 1;
      }
      t.set(i, j, std::move(row));
    }
  }
  for (const auto& a : qbar.arrows) {
    const int k = 1 - a.degree;
    if (k < 0 || k > qbar.d) {
      throw Error(ErrorCode::invalid_quiver,
                  "arrow '" + a.id + "' has a degree with no Ext group");
    }
    t.dims[{a.source, a.target}][k] += 1;
  }
  return t;
}

}  // namespace cyq
