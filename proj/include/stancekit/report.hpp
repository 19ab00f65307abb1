#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stancekit/lingstats.hpp"
#include "stancekit/netmetrics.hpp"
#include "stancekit/util.hpp"

namespace stancekit {

namespace detail {

inline std::string csv_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

inline std::string pct(const std::optional<double>& v) {
  return v ? format_fixed(*v * 100.0, 2) + "%" : std::string("-");
}

inline std::string z_cell(const std::optional<double>& v) {
  return v ? format_fixed(*v, 2) : std::string("-");
}

// Small p-values print as "<.001", matching the usual reporting convention.
inline std::string p_cell(const std::optional<double>& v) {
  if (!v) return "-";
  if (*v < 0.001) return "<.001";
  return format_fixed(*v, 3);
}

inline std::string metric_cell(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", *v);
  return buf;
}

inline std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << "  ";
      out << row[i];
      if (i + 1 < row.size()) out << std::string(widths[i] - row[i].size(), ' ');
    }
    out << "\n";
  }
  return out.str();
}

inline void set_opt(nlohmann::json& j, const char* key, const std::optional<double>& v) {
  if (v) {
    j[key] = *v;
  } else {
    j[key] = nullptr;
  }
}

}  // namespace detail

/// CSV with the column order of the published comparison table:
/// category, T1 pro/anti, z1, p1, T2 pro/anti, z2, p2.
inline std::string lingstats_csv(const std::vector<CategoryStats>& rows) {
  std::ostringstream out;
  out << "category,t1_pro,t1_anti,z1,p1,t2_pro,t2_anti,z2,p2\n";
  for (const CategoryStats& r : rows) {
    out << r.category_id << "," << detail::csv_cell(r.t1_pro) << ","
        << detail::csv_cell(r.t1_anti) << "," << detail::csv_cell(r.z1) << ","
        << detail::csv_cell(r.p1) << "," << detail::csv_cell(r.t2_pro) << ","
        << detail::csv_cell(r.t2_anti) << "," << detail::csv_cell(r.z2) << ","
        << detail::csv_cell(r.p2) << "\n";
  }
  return out.str();
}

inline std::string lingstats_table(const std::vector<CategoryStats>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"Lexical Category", "T1 (Pro)", "T1 (Anti)", "z (Z1)", "p (Z1)", "T2 (Pro)",
                   "T2 (Anti)", "z (Z2)", "p (Z2)"});
  for (const CategoryStats& r : rows) {
    cells.push_back({r.display_name, detail::pct(r.t1_pro), detail::pct(r.t1_anti),
                     detail::z_cell(r.z1), detail::p_cell(r.p1), detail::pct(r.t2_pro),
                     detail::pct(r.t2_anti), detail::z_cell(r.z2), detail::p_cell(r.p2)});
  }
  return detail::render_table(cells);
}

inline nlohmann::json lingstats_json(const std::vector<CategoryStats>& rows, double alpha) {
  nlohmann::json doc;
  doc["alpha"] = alpha;
  doc["categories"] = nlohmann::json::array();
  for (const CategoryStats& r : rows) {
    nlohmann::json row;
    row["id"] = r.category_id;
    row["display_name"] = r.display_name;
    detail::set_opt(row, "t1_pro", r.t1_pro);
    detail::set_opt(row, "t1_anti", r.t1_anti);
    detail::set_opt(row, "z1", r.z1);
    detail::set_opt(row, "p1", r.p1);
    row["significant_1"] = r.significant_1;
    detail::set_opt(row, "t2_pro", r.t2_pro);
    detail::set_opt(row, "t2_anti", r.t2_anti);
    detail::set_opt(row, "sd_pro", r.sd_pro);
    detail::set_opt(row, "sd_anti", r.sd_anti);
    row["n_users_pro"] = r.n_users_pro;
    row["n_users_anti"] = r.n_users_anti;
    detail::set_opt(row, "z2", r.z2);
    detail::set_opt(row, "p2", r.p2);
    row["significant_2"] = r.significant_2;
    doc["categories"].push_back(std::move(row));
  }
  return doc;
}

inline std::vector<CategoryStats> lingstats_from_json(const nlohmann::json& doc) {
  std::vector<CategoryStats> rows;
  auto opt = [](const nlohmann::json& j, const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<double>();
  };
  for (const auto& row : doc.at("categories")) {
    CategoryStats r;
    r.category_id = row.at("id").get<std::string>();
    r.display_name = row.value("display_name", r.category_id);
    r.t1_pro = opt(row, "t1_pro");
    r.t1_anti = opt(row, "t1_anti");
    r.z1 = opt(row, "z1");
    r.p1 = opt(row, "p1");
    r.significant_1 = row.value("significant_1", false);
    r.t2_pro = opt(row, "t2_pro");
    r.t2_anti = opt(row, "t2_anti");
    r.sd_pro = opt(row, "sd_pro");
    r.sd_anti = opt(row, "sd_anti");
    r.n_users_pro = row.value("n_users_pro", 0);
    r.n_users_anti = row.value("n_users_anti", 0);
    r.z2 = opt(row, "z2");
    r.p2 = opt(row, "p2");
    r.significant_2 = row.value("significant_2", false);
    rows.push_back(std::move(r));
  }
  return rows;
}

using NetworkMetricsByKind = std::map<std::string, std::optional<GroupNetworkMetrics>>;

inline const std::vector<std::string>& network_kind_order() {
  static const std::vector<std::string> order{"mention", "retweet", "reply"};
  return order;
}

namespace detail {

struct MetricRow {
  std::string label;
  std::string csv_key;
  std::optional<double> GroupNetworkMetrics::*field;
};

inline const std::vector<MetricRow>& metric_rows() {
  static const std::vector<MetricRow> rows{
      {"Network Density", "density", &GroupNetworkMetrics::density_all},
      {"Network Density (Pro)", "density_pro", &GroupNetworkMetrics::density_pro},
      {"Network Density (Anti)", "density_anti", &GroupNetworkMetrics::density_anti},
      {"EI Index (Pro)", "ei_pro", &GroupNetworkMetrics::ei_pro},
      {"EI Index (Anti)", "ei_anti", &GroupNetworkMetrics::ei_anti},
      {"Echo-chamberness (Pro)", "ec_pro", &GroupNetworkMetrics::ec_pro},
      {"Echo-chamberness (Anti)", "ec_anti", &GroupNetworkMetrics::ec_anti},
  };
  return rows;
}

}  // namespace detail

inline std::string netmetrics_csv(const NetworkMetricsByKind& by_kind) {
  std::ostringstream out;
  out << "measure,mention,retweet,reply\n";
  for (const auto& row : detail::metric_rows()) {
    out << row.csv_key;
    for (const std::string& kind : network_kind_order()) {
      out << ",";
      auto it = by_kind.find(kind);
      if (it != by_kind.end() && it->second) {
        out << detail::csv_cell((*it->second).*row.field);
      }
    }
    out << "\n";
  }
  return out.str();
}

inline std::string netmetrics_table(const NetworkMetricsByKind& by_kind) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"Measure", "Mention Network", "Retweet Network", "Reply Network"});
  for (const auto& row : detail::metric_rows()) {
    std::vector<std::string> line{row.label};
    for (const std::string& kind : network_kind_order()) {
      auto it = by_kind.find(kind);
      if (it != by_kind.end() && it->second) {
        line.push_back(detail::metric_cell((*it->second).*row.field));
      } else {
        line.push_back("-");
      }
    }
    cells.push_back(std::move(line));
  }
  return detail::render_table(cells);
}

inline nlohmann::json netmetrics_json(const NetworkMetricsByKind& by_kind) {
  nlohmann::json doc;
  for (const std::string& kind : network_kind_order()) {
    auto it = by_kind.find(kind);
    if (it == by_kind.end() || !it->second) {
      doc[kind] = nullptr;
      continue;
    }
    const GroupNetworkMetrics& m = *it->second;
    nlohmann::json j;
    detail::set_opt(j, "density", m.density_all);
    detail::set_opt(j, "density_pro", m.density_pro);
    detail::set_opt(j, "density_anti", m.density_anti);
    detail::set_opt(j, "ei_pro", m.ei_pro);
    detail::set_opt(j, "ei_anti", m.ei_anti);
    j["el_pro"] = m.el_pro;
    j["il_pro"] = m.il_pro;
    j["el_anti"] = m.el_anti;
    j["il_anti"] = m.il_anti;
    detail::set_opt(j, "ec_pro", m.ec_pro);
    detail::set_opt(j, "ec_anti", m.ec_anti);
    detail::set_opt(j, "reciprocity_pro", m.reciprocity_pro);
    detail::set_opt(j, "reciprocity_anti", m.reciprocity_anti);
    doc[kind] = std::move(j);
  }
  return doc;
}

inline NetworkMetricsByKind netmetrics_from_json(const nlohmann::json& doc) {
  NetworkMetricsByKind by_kind;
  auto opt = [](const nlohmann::json& j, const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<double>();
  };
  for (const std::string& kind : network_kind_order()) {
    if (!doc.contains(kind) || doc[kind].is_null()) {
      by_kind[kind] = std::nullopt;
      continue;
    }
    const nlohmann::json& j = doc[kind];
    GroupNetworkMetrics m;
    m.density_all = opt(j, "density");
    m.density_pro = opt(j, "density_pro");
    m.density_anti = opt(j, "density_anti");
    m.ei_pro = opt(j, "ei_pro");
    m.ei_anti = opt(j, "ei_anti");
    m.el_pro = j.value("el_pro", 0);
    m.il_pro = j.value("il_pro", 0);
    m.el_anti = j.value("el_anti", 0);
    m.il_anti = j.value("il_anti", 0);
    m.ec_pro = opt(j, "ec_pro");
    m.ec_anti = opt(j, "ec_anti");
    m.reciprocity_pro = opt(j, "reciprocity_pro");
    m.reciprocity_anti = opt(j, "reciprocity_anti");
    by_kind[kind] = m;
  }
  return by_kind;
}

}  // namespace stancekit
