#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "config.hpp"
#include "sqzlink/channel.hpp"
#include "sqzlink/errors.hpp"
#include "sqzlink/montecarlo.hpp"

namespace sqzlink::cli {

namespace {

Cell copies_cell(const CorrelationStats& stats) {
  if (stats.infinite()) return std::string("inf");
  return *stats.m_required;
}

}  // namespace

Table fig2a_table(const std::vector<double>& nbars, const SqueezeSpec& squeeze, double eta,
                  MeasurementModel model) {
  if (nbars.empty()) throw DomainError("empty nbar sweep");
  const double s = squeeze_factor(squeeze);
  Table table{{"nbar", "eta", "r_convention", "r", "s", "C", "sigma", "snr"}, {}};
  for (double nbar : nbars) {
    const auto stats = snr_and_copies({{nbar}, squeeze, eta}, model);
    table.rows.push_back({nbar, eta, std::string(to_string(squeeze.convention)), squeeze.value, s,
                          stats.c_mean, stats.sigma_per_copy, stats.snr});
  }
  return table;
}

Table fig2b_table(const std::vector<double>& length_ratios, const std::vector<double>& nbars,
                  const SqueezeSpec& squeeze, MeasurementModel model) {
  if (length_ratios.empty() || nbars.empty()) throw DomainError("empty sweep");
  Table table{{"L_over_L0", "eta", "nbar", "snr", "M"}, {}};
  for (double ratio : length_ratios) {
    const double eta = ChannelParams::from_length_ratio(ratio).transmittance();
    for (double nbar : nbars) {
      const auto stats = snr_and_copies({{nbar}, squeeze, eta}, model);
      table.rows.push_back({ratio, eta, nbar, stats.snr, copies_cell(stats)});
    }
  }
  return table;
}

Table fig3_table(const Alphabet& alphabet, const FrameSpec& frame) {
  const auto boundaries = thresholds(alphabet, frame);
  Table table{{"label", "r", "C", "sigma", "snr", "boundary_low", "boundary_high"}, {}};
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < alphabet.size(); ++k) {
    const auto stats = snr_and_copies(frame.operating_point(alphabet.level(k)), frame.model);
    const double high = k == 0 ? inf : boundaries[k - 1];
    const double low = k + 1 == alphabet.size() ? -inf : boundaries[k];
    table.rows.push_back({static_cast<std::uint64_t>(k), alphabet.level(k).value, stats.c_mean,
                          stats.sigma_per_copy, stats.snr, low, high});
  }
  return table;
}

nlohmann::json transmit_results(const TransmitRequest& request, const Alphabet& alphabet,
                                const FrameSpec& frame) {
  frame.validate();
  const auto boundaries = thresholds(alphabet, frame);
  const DitFrame sent = encode(request.payload_bits, alphabet);

  std::vector<CovMat2> states;
  for (const auto& level : alphabet.levels()) {
    states.push_back(output_state(frame.operating_point(level)));
  }

  DitFrame received{{}, sent.bit_length};
  auto symbols = nlohmann::json::array();
  std::size_t symbol_errors = 0;
  for (std::size_t i = 0; i < sent.dits.size(); ++i) {
    TrialResult trial;
    trial.copies_used = frame.copies_per_symbol;
    trial.c_hat = estimate_correlation(states[sent.dits[i]], frame.model, frame.copies_per_symbol,
                                       {request.master_seed, kTransmitStreamBase + i});
    trial.decided_symbol = decode(trial.c_hat, boundaries);
    received.dits.push_back(trial.decided_symbol);
    symbol_errors += trial.decided_symbol != sent.dits[i] ? 1 : 0;
    symbols.push_back({{"sent", sent.dits[i]},
                       {"c_hat", trial.c_hat},
                       {"decided", trial.decided_symbol},
                       {"copies_used", trial.copies_used}});
  }
  const std::string recovered = decode_bits(received, alphabet);
  std::size_t bit_errors = 0;
  for (std::size_t i = 0; i < recovered.size(); ++i) {
    bit_errors += recovered[i] != request.payload_bits[i] ? 1 : 0;
  }

  nlohmann::json results;
  results["payload"] = request.payload_bits;
  results["recovered"] = recovered;
  results["bit_length"] = sent.bit_length;
  results["bits_per_symbol"] = alphabet.bits_per_symbol();
  results["symbols"] = symbols;
  results["symbol_errors"] = symbol_errors;
  results["bit_errors"] = bit_errors;
  if (sent.dits.empty()) {
    results["symbol_error_rate"] = nullptr;
    results["bit_error_rate"] = nullptr;
  } else {
    results["symbol_error_rate"] =
        static_cast<double>(symbol_errors) / static_cast<double>(sent.dits.size());
    results["bit_error_rate"] =
        static_cast<double>(bit_errors) / static_cast<double>(sent.bit_length);
  }
  results["expected_correlations"] = expected_correlations(alphabet, frame);
  results["thresholds"] = boundaries;

  const auto ser = symbol_error_rate(alphabet, frame, request.trials, request.master_seed);
  results["ser_simulation"] = {{"trials", request.trials},
                               {"per_symbol", ser.per_symbol},
                               {"mean", ser.mean},
                               {"confusion", ser.confusion}};
  return results;
}

Table transmit_table(const nlohmann::json& results, const Alphabet& alphabet) {
  Table table{{"label", "r", "c_expected", "ser"}, {}};
  for (std::size_t j = 0; j < alphabet.size(); ++j) table.header.push_back("decided_" + std::to_string(j));
  const auto& sim = results.at("ser_simulation");
  for (std::size_t k = 0; k < alphabet.size(); ++k) {
    std::vector<Cell> row{static_cast<std::uint64_t>(k), alphabet.level(k).value,
                          results.at("expected_correlations")[k].get<double>(),
                          sim.at("per_symbol")[k].get<double>()};
    for (std::size_t j = 0; j < alphabet.size(); ++j) {
      row.emplace_back(sim.at("confusion")[k][j].get<double>());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

const std::vector<std::string> kCommands{"fig2a", "fig2b", "fig3", "transmit"};

struct Flags {
  std::optional<std::string> nbar;
  double squeeze = 0.576;
  std::string convention = "paper";
  double eta = 0.0;
  std::optional<std::string> length_ratio;
  std::string model = "joint";
  std::optional<std::string> alphabet;
  std::size_t copies = 2;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string payload;
  std::string payload_file;
  std::string out;
  std::string format;
  int threads = 0;
  std::string config;
};

struct ChannelFlags {
  CLI::Option* eta = nullptr;
  CLI::Option* length_ratio = nullptr;
};

void add_common(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config, "Flat JSON config or a manifest to replay");
  sub.add_option("--squeeze", f.squeeze, "Squeezing magnitude")->capture_default_str();
  sub.add_option("--squeeze-convention", f.convention, "standard|paper|db|factor")
      ->capture_default_str();
  sub.add_option("--model", f.model, "joint|alt-homodyne|heterodyne")->capture_default_str();
  sub.add_option("--out", f.out, "Output file (stdout when omitted)");
  sub.add_option("--threads", f.threads, "OpenMP workers (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  sub.add_option("--seed", f.seed, "Master seed")->capture_default_str();
}

ChannelFlags add_channel(CLI::App& sub, Flags& f) {
  ChannelFlags c;
  c.eta = sub.add_option("--eta", f.eta, "Intensity transmittance");
  c.length_ratio = sub.add_option("--length-ratio", f.length_ratio, "L/L0 (default 10)");
  c.eta->excludes(c.length_ratio);
  return c;
}

double resolve_eta(const Flags& f, const ChannelFlags& c, nlohmann::json& config) {
  if (c.eta->count() > 0) {
    config["eta"] = f.eta;
    return ChannelParams::from_transmittance(f.eta).transmittance();
  }
  const auto ratio = c.length_ratio->count() > 0 ? parse_sweep(*f.length_ratio)
                                                 : std::vector<double>{10.0};
  if (ratio.size() != 1) throw DomainError("--length-ratio takes a single value here");
  config["length-ratio"] = ratio.front();
  return ChannelParams::from_length_ratio(ratio.front()).transmittance();
}

SqueezeSpec resolve_squeeze(const Flags& f, nlohmann::json& config) {
  const SqueezeSpec spec{f.squeeze, parse_squeeze_convention(f.convention)};
  squeeze_factor(spec);
  config["squeeze"] = f.squeeze;
  config["squeeze-convention"] = std::string(to_string(spec.convention));
  return spec;
}

MeasurementModel resolve_model(const Flags& f, nlohmann::json& config) {
  const auto model = parse_measurement_model(f.model);
  config["model"] = std::string(to_string(model));
  return model;
}

double single_value(const std::string& text, const char* name) {
  const auto values = parse_sweep(text);
  if (values.size() != 1) throw DomainError(std::string(name) + " takes a single value here");
  return values.front();
}

Alphabet resolve_alphabet(const Flags& f, nlohmann::json& config) {
  const auto convention = parse_squeeze_convention(f.convention);
  const auto values = parse_sweep(f.alphabet.value());
  config["alphabet"] = values;
  config["squeeze-convention"] = std::string(to_string(convention));
  return Alphabet::from_values(values, convention);
}

std::string read_payload(const Flags& f) {
  std::string raw = f.payload;
  if (!f.payload_file.empty()) raw = read_file(f.payload_file);
  std::string bits;
  for (char c : raw) {
    if (c == '0' || c == '1') {
      bits.push_back(c);
    } else if (c != ' ' && c != '\n' && c != '\r' && c != '\t') {
      throw DomainError("payload may contain only '0', '1' and whitespace");
    }
  }
  return bits;
}

// Turns config entries into flags placed right after the subcommand token,
// skipping any flag the user already passed.
std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& app,
                                      std::string& command) {
  const ArgScan scan = scan_args(args, kCommands);
  if (scan.config_path.empty()) return args;
  std::string manifest_command;
  const nlohmann::json config = load_config(scan.config_path, &manifest_command);

  std::vector<std::string> merged = args;
  std::ptrdiff_t insert_at = scan.subcommand;
  if (insert_at < 0) {
    if (manifest_command.empty()) return args;
    merged.insert(merged.begin(), manifest_command);
    insert_at = 0;
  }
  command = merged[static_cast<std::size_t>(insert_at)];
  CLI::App* sub = app.get_subcommand(command);
  const bool user_channel = has_flag(args, "--eta") || has_flag(args, "--length-ratio");

  std::vector<std::string> injected;
  for (const auto& [key, value] : config.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (sub->get_option_no_throw(flag) == nullptr || has_flag(args, flag)) continue;
    if (user_channel && (key == "eta" || key == "length-ratio")) continue;
    injected.push_back(flag);
    injected.push_back(json_value_to_flag(value));
  }
  merged.insert(merged.begin() + insert_at + 1, injected.begin(), injected.end());
  return merged;
}

// Writes the rendered output and, for file outputs, its manifest.
void emit(const std::string& command, const Flags& f, nlohmann::json config,
          const std::string& format, const Table* table, const nlohmann::json& results,
          std::ostream& out) {
  config["format"] = format;
  if (!f.out.empty()) config["out"] = f.out;
  config["threads"] = f.threads;
  config["seed"] = f.seed;

  RunManifest manifest{command, config, f.seed, utc_timestamp(), {}};
  std::string rendered;
  if (format == "csv") {
    std::ostringstream ss;
    write_csv(ss, *table);
    rendered = ss.str();
  } else {
    const nlohmann::json doc{{"config", config}, {"manifest", manifest.to_json()},
                             {"results", table ? table_to_json(*table) : results}};
    rendered = doc.dump(2) + "\n";
  }

  if (f.out.empty()) {
    out << rendered;
    return;
  }
  write_file(f.out, rendered);
  manifest.outputs.push_back({f.out, sha256_hex(rendered)});
  write_file(f.out + ".manifest.json", manifest.to_json().dump(2) + "\n");
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw DomainError("--format must be csv or json");
}

}  // namespace

int run(const std::vector<std::string>& input, std::ostream& out, std::ostream& err) {
  CLI::App app{"Squeezing-encoded communication over a lossy nanowire channel", "sqzlink"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Flags f;
  auto* fig2a = app.add_subcommand("fig2a", "Correlation SNR against preparation noise (M = 1)");
  add_common(*fig2a, f);
  fig2a->add_option("--nbar", f.nbar, "nbar sweep (default 0,10,100,1000,10000,100000)");
  const auto fig2a_channel = add_channel(*fig2a, f);
  fig2a->add_option("--format", f.format, "csv|json");

  auto* fig2b = app.add_subcommand("fig2b", "Required copy count against distance");
  add_common(*fig2b, f);
  fig2b->add_option("--nbar", f.nbar, "nbar list (default 0,10000)");
  fig2b->add_option("--length-ratio", f.length_ratio, "L/L0 sweep (default 0:10:11)");
  fig2b->add_option("--format", f.format, "csv|json");

  auto* fig3 = app.add_subcommand("fig3", "Per-symbol correlation and SNR of a multi-level alphabet");
  add_common(*fig3, f);
  fig3->add_option("--nbar", f.nbar, "Thermal occupation (default 10000)");
  fig3->add_option("--alphabet", f.alphabet, "Squeezing levels r0,r1,... (default 0,0.1,0.2,0.3)");
  const auto fig3_channel = add_channel(*fig3, f);
  fig3->add_option("--format", f.format, "csv|json");

  auto* transmit = app.add_subcommand("transmit", "Send a bit payload end to end");
  add_common(*transmit, f);
  transmit->add_option("--nbar", f.nbar, "Thermal occupation (default 10000)");
  transmit->add_option("--alphabet", f.alphabet, "Squeezing levels (default 0,0.576)");
  transmit->add_option("--copies", f.copies, "Copies per symbol")->capture_default_str();
  transmit->add_option("--trials", f.trials, "Trials per label for the SER estimate")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* payload = transmit->add_option("--payload", f.payload, "Literal bit string");
  transmit->add_option("--payload-file", f.payload_file, "File holding the bit string")
      ->excludes(payload);
  const auto transmit_channel = add_channel(*transmit, f);
  transmit->add_option("--format", f.format, "json|csv (default json)");

  try {
    std::string command;
    std::vector<std::string> args = merge_config(input, app, command);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      std::ostringstream os, es;
      const int code = app.exit(e, os, es);
      out << os.str();
      err << es.str();
      return code == 0 ? kExitOk : kExitUsage;
    }
    if (f.threads > 0) omp_set_num_threads(f.threads);

    nlohmann::json config = nlohmann::json::object();
    if (fig2a->parsed()) {
      const auto nbars = parse_sweep(f.nbar.value_or("0,10,100,1000,10000,100000"));
      config["nbar"] = nbars;
      const auto squeeze = resolve_squeeze(f, config);
      const double eta = resolve_eta(f, fig2a_channel, config);
      const auto model = resolve_model(f, config);
      const std::string format = f.format.empty() ? "csv" : f.format;
      check_format(format);
      const auto table = fig2a_table(nbars, squeeze, eta, model);
      emit("fig2a", f, config, format, &table, {}, out);
    } else if (fig2b->parsed()) {
      const auto nbars = parse_sweep(f.nbar.value_or("0,10000"));
      const auto ratios = parse_sweep(f.length_ratio.value_or("0:10:11"));
      config["nbar"] = nbars;
      config["length-ratio"] = ratios;
      const auto squeeze = resolve_squeeze(f, config);
      const auto model = resolve_model(f, config);
      const std::string format = f.format.empty() ? "csv" : f.format;
      check_format(format);
      const auto table = fig2b_table(ratios, nbars, squeeze, model);
      emit("fig2b", f, config, format, &table, {}, out);
    } else if (fig3->parsed()) {
      if (!f.alphabet) f.alphabet = "0,0.1,0.2,0.3";
      const auto alphabet = resolve_alphabet(f, config);
      FrameSpec frame;
      frame.nbar = {single_value(f.nbar.value_or("10000"), "--nbar")};
      config["nbar"] = frame.nbar.nbar;
      frame.channel = ChannelParams::from_transmittance(resolve_eta(f, fig3_channel, config));
      frame.model = resolve_model(f, config);
      const std::string format = f.format.empty() ? "csv" : f.format;
      check_format(format);
      const auto table = fig3_table(alphabet, frame);
      emit("fig3", f, config, format, &table, {}, out);
    } else {
      if (!f.alphabet) f.alphabet = "0,0.576";
      const auto alphabet = resolve_alphabet(f, config);
      FrameSpec frame;
      frame.nbar = {single_value(f.nbar.value_or("10000"), "--nbar")};
      config["nbar"] = frame.nbar.nbar;
      frame.channel = ChannelParams::from_transmittance(resolve_eta(f, transmit_channel, config));
      frame.model = resolve_model(f, config);
      frame.copies_per_symbol = f.copies;
      config["copies"] = f.copies;
      config["trials"] = f.trials;
      frame.validate();
      const std::string bits = read_payload(f);
      if (!f.payload_file.empty()) {
        config["payload-file"] = f.payload_file;
      } else {
        config["payload"] = f.payload;
      }
      const std::string format = f.format.empty() ? "json" : f.format;
      check_format(format);
      const auto results = transmit_results({bits, f.trials, f.seed}, alphabet, frame);
      if (format == "csv") {
        const auto table = transmit_table(results, alphabet);
        emit("transmit", f, config, format, &table, {}, out);
      } else {
        emit("transmit", f, config, format, nullptr, results, out);
      }
    }
    return kExitOk;
  } catch (const IoError& e) {
    err << "sqzlink: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    err << "sqzlink: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "sqzlink: numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "sqzlink: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace sqzlink::cli
