#include "rcfluct/report_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcfluct {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["n"] = config.n;
  if (config.poly) {
    std::vector<std::string> coeffs;
    for (int k = 1; k <= config.poly->degree(); ++k)
      coeffs.push_back(rational_string(config.poly->coeff(k)));
    j["Q_coeffs"] = coeffs;
  } else {
    j["ps"] = config.ps;
  }
  j["distribution"] = to_string(config.dist);
  j["replicates"] = config.replicates;
  j["seed"] = config.seed;
  j["trace_path"] = to_string(config.path);
  j["centering"] = to_string(config.centering);
  j["budget"] = config.budget;
  return j;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(std::string v) {
  v = trim(v);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']')
      throw std::invalid_argument("config: unterminated list: " + v);
    v = v.substr(1, v.size() - 2);
  }
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void apply_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "n") c.n = std::stoi(value);
  else if (key == "ps") {
    c.ps.clear();
    for (const auto& item : split_list(value)) c.ps.push_back(std::stoi(item));
  } else if (key == "Q_coeffs") {
    std::vector<BigRat> coeffs;
    for (const auto& item : split_list(value)) coeffs.push_back(parse_rational(item));
    c.poly = EvenPolynomial(std::move(coeffs));
  } else if (key == "distribution") c.dist = distribution_from_name(value).kind;
  else if (key == "replicates") c.replicates = std::stoi(value);
  else if (key == "seed") c.seed = std::stoull(value);
  else if (key == "trace_path") c.path = trace_path_from_name(value);
  else if (key == "centering") c.centering = centering_from_name(value);
  else if (key == "budget") c.budget = std::stoull(value);
  else throw std::invalid_argument("config: unknown key: " + key);
}

ExperimentConfig config_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "ps") {
      c.ps = value.get<std::vector<int>>();
    } else if (key == "Q_coeffs") {
      std::vector<BigRat> coeffs;
      for (const auto& item : value)
        coeffs.push_back(item.is_string() ? parse_rational(item.get<std::string>())
                                          : parse_rational(item.dump()));
      c.poly = EvenPolynomial(std::move(coeffs));
    } else if (value.is_string()) {
      apply_key(c, key, value.get<std::string>());
    } else {
      apply_key(c, key, value.dump());
    }
  }
  return c;
}

}  // namespace

ExperimentConfig config_from_text(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '{') return config_from_json_text(text);
    break;
  }
  ExperimentConfig c;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got: " + line);
    apply_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_text(buffer.str());
}

std::string samples_to_csv(const FluctuationSamples& samples) {
  std::string out = "replicate";
  for (const auto& label : samples.labels) out += "," + label;
  out += "\n";
  const std::size_t r = samples.columns.empty() ? 0 : samples.columns.front().size();
  for (std::size_t i = 0; i < r; ++i) {
    out += std::to_string(i);
    for (const auto& col : samples.columns) out += "," + format_double(col[i]);
    out += "\n";
  }
  return out;
}

namespace {

nlohmann::ordered_json diagnostics_json(const std::optional<NormalityDiagnostics>& d) {
  if (!d) return nullptr;
  nlohmann::ordered_json j;
  j["skewness"] = d->skewness;
  j["excess_kurtosis"] = d->excess_kurtosis;
  j["ks_statistic"] = d->ks_statistic;
  j["ks_p_value"] = d->ks_p_value;
  j["degenerate"] = d->degenerate;
  if (d->degenerate) j["degenerate_pass"] = d->degenerate_pass;
  return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const CovarianceReport& report,
                                      const ExperimentConfig& config,
                                      bool with_meta) {
  nlohmann::ordered_json j;
  j["config"] = config_to_json(config);

  nlohmann::ordered_json emp;
  emp["labels"] = report.labels;
  {
    std::vector<std::vector<double>> value, se;
    for (const auto& row : report.empirical) {
      std::vector<double> v, s;
      for (const Estimate& e : row) {
        v.push_back(e.value);
        s.push_back(e.se);
      }
      value.push_back(v);
      se.push_back(s);
    }
    emp["covariance"] = value;
    emp["jackknife_se"] = se;
  }
  j["empirical"] = emp;

  nlohmann::ordered_json theo;
  theo["covariance"] = report.theoretical;
  theo["exact"] = report.theoretical_exact;
  j["theoretical"] = theo;

  nlohmann::ordered_json diags = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.diagnostics.size(); ++i) {
    nlohmann::ordered_json d = diagnostics_json(report.diagnostics[i]);
    if (!d.is_null()) d["label"] = report.labels[i];
    diags.push_back(d);
  }
  j["diagnostics"] = diags;

  nlohmann::ordered_json cent;
  cent["mode"] = to_string(config.centering);
  nlohmann::ordered_json used, centers;
  for (const auto& [p, how] : report.centering_used) used[std::to_string(p)] = how;
  for (const auto& [p, c] : report.centers) centers[std::to_string(p)] = c;
  cent["used"] = used;
  cent["centers"] = centers;
  cent["degenerate"] = report.degenerate;
  j["centering"] = cent;

  if (with_meta) {
    nlohmann::ordered_json meta;
    meta["runtime_seconds"] = report.runtime_seconds;
    j["meta"] = meta;
  }
  return j;
}

std::string report_to_csv(const CovarianceReport& report,
                          const ExperimentConfig& config, bool with_meta) {
  std::string out = "section,row,col,field,value\n";
  auto line = [&](const std::string& section, const std::string& row,
                  const std::string& col, const std::string& field,
                  const std::string& value) {
    out += section + "," + row + "," + col + "," + field + "," + value + "\n";
  };
  const std::size_t d = report.labels.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j2 = 0; j2 < d; ++j2) {
      line("empirical", report.labels[i], report.labels[j2], "covariance",
           format_double(report.empirical[i][j2].value));
      line("empirical", report.labels[i], report.labels[j2], "jackknife_se",
           format_double(report.empirical[i][j2].se));
      line("theoretical", report.labels[i], report.labels[j2], "covariance",
           format_double(report.theoretical[i][j2]));
      line("theoretical", report.labels[i], report.labels[j2], "exact",
           report.theoretical_exact[i][j2]);
    }
  for (std::size_t i = 0; i < d; ++i) {
    const auto& diag = report.diagnostics[i];
    if (!diag) continue;
    line("diagnostics", report.labels[i], "", "skewness", format_double(diag->skewness));
    line("diagnostics", report.labels[i], "", "excess_kurtosis",
         format_double(diag->excess_kurtosis));
    line("diagnostics", report.labels[i], "", "ks_statistic",
         format_double(diag->ks_statistic));
    line("diagnostics", report.labels[i], "", "ks_p_value",
         format_double(diag->ks_p_value));
    if (diag->degenerate)
      line("diagnostics", report.labels[i], "", "degenerate_pass",
           diag->degenerate_pass ? "true" : "false");
  }
  line("centering", "", "", "mode", to_string(config.centering));
  for (const auto& [p, how] : report.centering_used)
    line("centering", std::to_string(p), "", "used", how);
  for (const auto& [p, c] : report.centers)
    line("centering", std::to_string(p), "", "center", format_double(c));
  line("centering", "", "", "degenerate", report.degenerate ? "true" : "false");
  if (with_meta)
    line("meta", "", "", "runtime_seconds", format_double(report.runtime_seconds));
  return out;
}

}  // namespace rcfluct
