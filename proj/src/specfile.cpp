#include "cutoff_lab/specfile.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cutoff_lab {

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ValidationError("trailing junk in number: " + s);
    return v;
  } catch (const std::invalid_argument&) {
    throw ValidationError("not a number: " + s);
  } catch (const std::out_of_range&) {
    throw ValidationError("number out of range: " + s);
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)));
  return out;
}

}  // namespace

RecurrenceSpec parse_spec(std::istream& in) {
  RecurrenceSpec spec;
  bool have_p = false, have_phi = false, have_init = false, have_eps = false;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("expected key=value line: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "p") {
      spec.p = static_cast<int>(parse_number(value));
      have_p = true;
    } else if (key == "phi") {
      spec.phi = parse_list(value);
      have_phi = true;
    } else if (key == "init") {
      spec.init = parse_list(value);
      have_init = true;
    } else if (key == "eps") {
      spec.eps = parse_number(value);
      have_eps = true;
    } else {
      throw ValidationError("unknown spec key: " + key);
    }
  }
  if (!have_p || !have_phi || !have_init || !have_eps)
    throw ValidationError("spec file must define p, phi, init, eps");
  spec.validate();
  return spec;
}

RecurrenceSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open spec file: " + path);
  return parse_spec(in);
}

void write_spec(std::ostream& out, const RecurrenceSpec& spec) {
  out << "p=" << spec.p << "\n";
  out << "phi=";
  for (std::size_t i = 0; i < spec.phi.size(); ++i)
    out << (i ? "," : "") << format_double(spec.phi[i]);
  out << "\ninit=";
  for (std::size_t i = 0; i < spec.init.size(); ++i)
    out << (i ? "," : "") << format_double(spec.init[i]);
  out << "\neps=" << format_double(spec.eps) << "\n";
}

void save_spec(const std::string& path, const RecurrenceSpec& spec) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write spec file: " + path);
  write_spec(out, spec);
}

}  // namespace cutoff_lab
