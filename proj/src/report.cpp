#include "splinedim/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace splinedim {

OutputFormat parse_format(const std::string& name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw std::invalid_argument("unknown format \"" + name +
                              "\" (expected table, json or csv)");
}

namespace {

nlohmann::ordered_json report_to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["r"] = r.r;
  j["k"] = r.k;
  j["lbh"] = r.lbh;
  j["lbs"] = r.lbs;
  auto opt = [&](const char* key, const std::optional<long long>& v) {
    if (v) {
      j[key] = *v;
    } else {
      j[key] = nullptr;
    }
  };
  opt("ubh_for_ordering", r.ubh_for_ordering);
  opt("ubs_for_ordering", r.ubs_for_ordering);
  opt("best_ubh", r.best_ubh);
  opt("oracle_dim", r.oracle_dim);
  opt("homology_defect", r.homology_defect);
  j["exactness_certified"] = r.exactness_certified;
  j["trivial_floor"] = r.trivial_floor;
  if (r.ordering_has_zero_tilde) j["ordering_has_zero_tilde"] = true;
  return j;
}

std::string cell(const std::optional<long long>& v) {
  return v ? std::to_string(*v) : "-";
}

}  // namespace

std::string reports_to_json(const std::vector<BoundReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream os;
  os << "r,k,lbh,lbs,ubh_for_ordering,ubs_for_ordering,best_ubh,oracle_dim,"
        "homology_defect,exactness_certified,trivial_floor\n";
  for (const auto& r : reports) {
    os << r.r << ',' << r.k << ',' << r.lbh << ',' << r.lbs << ','
       << cell(r.ubh_for_ordering) << ',' << cell(r.ubs_for_ordering) << ','
       << cell(r.best_ubh) << ',' << cell(r.oracle_dim) << ','
       << cell(r.homology_defect) << ',' << (r.exactness_certified ? 1 : 0)
       << ',' << r.trivial_floor << '\n';
  }
  return os.str();
}

std::string reports_to_table(const std::vector<BoundReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "r" << std::setw(4) << "k" << std::setw(8)
     << "LBH" << std::setw(8) << "LBS" << std::setw(10) << "UBH(ord)"
     << std::setw(10) << "UBS(ord)" << std::setw(10) << "bestUBH"
     << std::setw(8) << "dim" << std::setw(8) << "defect" << std::setw(10)
     << "certified" << "floor\n";
  for (const auto& r : reports) {
    os << std::left << std::setw(4) << r.r << std::setw(4) << r.k
       << std::setw(8) << r.lbh << std::setw(8) << r.lbs << std::setw(10)
       << cell(r.ubh_for_ordering) << std::setw(10) << cell(r.ubs_for_ordering)
       << std::setw(10) << cell(r.best_ubh) << std::setw(8)
       << cell(r.oracle_dim) << std::setw(8) << cell(r.homology_defect)
       << std::setw(10) << (r.exactness_certified ? "yes" : "no")
       << r.trivial_floor;
    if (r.ordering_has_zero_tilde) os << "  [ordering has t~ = 0]";
    os << '\n';
  }
  return os.str();
}

std::string render_reports(const std::vector<BoundReport>& reports, OutputFormat f) {
  switch (f) {
    case OutputFormat::Json:
      return reports_to_json(reports);
    case OutputFormat::Csv:
      return reports_to_csv(reports);
    default:
      return reports_to_table(reports);
  }
}

}  // namespace splinedim
