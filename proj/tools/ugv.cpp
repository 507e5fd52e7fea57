// ugv: headless runs, live station service and DTMF utilities.
//
// Exit codes: 0 success, 2 input error, 3 environment error.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ugv/ugv.hpp"
#include "ugv/server.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitEnvironment = 3;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop.store(true); }

struct ChannelFlags {
    std::optional<double> snr_db;
    std::optional<double> drop_prob;
    std::optional<double> latency_ms;
    std::optional<std::uint64_t> seed;
    bool invert_turns = false;

    void attach(CLI::App* app) {
        app->add_option("--seed", seed, "Session seed (overrides the scenario's)");
        app->add_option("--snr-db", snr_db, "Uplink audio SNR in dB");
        app->add_option("--drop-prob", drop_prob, "Per-message drop probability")->check(CLI::Range(0.0, 1.0));
        app->add_option("--latency-ms", latency_ms, "One-way link latency in ms")->check(CLI::NonNegativeNumber);
        app->add_flag("--invert-turns", invert_turns, "Right spins counter-clockwise");
    }

    ugv::RunOptions options() const {
        ugv::RunOptions o;
        o.seed = seed;
        o.channel.snr_db = snr_db;
        o.channel.drop_probability = drop_prob;
        if (latency_ms) o.channel.latency = *latency_ms / 1000.0;
        o.invert_turns = invert_turns;
        return o;
    }
};

struct DtmfFlags {
    ugv::dtmf::Config config;
    double symbol_ms = 80.0;
    double gap_ms = 80.0;

    void attach(CLI::App* app) {
        app->add_option("--sample-rate", config.sample_rate, "PCM sample rate in Hz")->capture_default_str();
        app->add_option("--symbol-ms", symbol_ms, "Tone duration per symbol")->capture_default_str();
        app->add_option("--gap-ms", gap_ms, "Silence after each symbol")->capture_default_str();
        app->add_option("--amplitude", config.amplitude, "Peak amplitude per tone")->capture_default_str();
    }

    ugv::dtmf::Config resolved() const {
        auto c = config;
        c.symbol_duration = symbol_ms / 1000.0;
        c.gap_duration = gap_ms / 1000.0;
        c.detect_window = static_cast<std::size_t>(std::lround(0.040 * c.sample_rate));
        c.validate();
        return c;
    }
};

int cmd_run(const std::string& scenario_path, const std::string& script_path, double duration,
            const std::string& out_path, const ChannelFlags& flags) {
    const auto scenario = ugv::load_scenario(scenario_path);
    std::vector<ugv::ScriptEntry> script;
    if (!script_path.empty()) script = ugv::load_script(script_path);
    const auto config = ugv::make_session_config(scenario, flags.options());

    std::optional<std::ofstream> csv;
    if (!out_path.empty()) {
        csv.emplace(out_path, std::ios::binary);
        if (!*csv) throw ugv::InputError("cannot open " + out_path + " for writing");
    }
    const auto report = ugv::run_scenario(config, script, duration, csv ? &*csv : nullptr);
    std::cout << ugv::report_json(report) << "\n";
    std::cerr << "wall clock " << report.wall_clock_seconds << " s for " << report.simulated_seconds
              << " s simulated\n";
    return 0;
}

int cmd_serve(const std::string& scenario_path, std::uint16_t port, const ChannelFlags& flags) {
    const auto scenario = ugv::load_scenario(scenario_path);
    auto config = ugv::make_session_config(scenario, flags.options());
    config.port = port;
    ugv::Session session(config);
    ugv::StationServer server(session, port, [](const std::string& line) { std::cerr << line << std::endl; });

    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "station listening on port " << server.port() << std::endl;
    server.run(g_stop);
    session.stop();
    std::cerr << "station stopped" << std::endl;
    return 0;
}

int cmd_dtmf_encode(const std::string& in_path, const std::string& out_path, const DtmfFlags& flags) {
    const auto config = flags.resolved();
    std::ifstream in(in_path);
    if (!in) throw ugv::InputError("cannot open " + in_path);
    std::vector<ugv::dtmf::Symbol> symbols;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const auto name = line.substr(b, e - b + 1);
        const auto cmd = ugv::parse_command(name);
        if (!cmd) throw ugv::InputError("unknown command '" + name + "'");
        symbols.push_back(ugv::encode_command(*cmd));
    }
    const auto audio = ugv::dtmf::synthesize_sequence(symbols, config);
    ugv::wav::write_file(out_path, audio.samples, config.sample_rate);
    return 0;
}

int cmd_dtmf_decode(const std::string& in_path, const std::string& out_path, const DtmfFlags& flags) {
    const auto config = flags.resolved();
    const auto pcm = ugv::wav::read_file(in_path);
    if (pcm.sample_rate != config.sample_rate) {
        throw ugv::InputError("WAV sample rate " + std::to_string(pcm.sample_rate) + " Hz, expected " +
                              std::to_string(config.sample_rate) + " Hz (see --sample-rate)");
    }
    std::ostringstream text;
    for (auto sym : ugv::dtmf::decode_stream(pcm.samples, config)) {
        if (auto cmd = ugv::decode_command(sym)) {
            text << ugv::wire_name(*cmd) << "\n";
        } else {
            text << "unknown(" << sym.to_char() << ")\n";
        }
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << text.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ugv::InputError("cannot open " + out_path + " for writing");
        out << text.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleoperated ground vehicle simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string script_path;
    std::string out_path;
    double duration = 0.0;
    ChannelFlags run_flags;
    auto* run = app.add_subcommand("run", "Run a scripted mission headless and write the trajectory CSV");
    run->add_option("--scenario", scenario_path, "Scenario JSON")->required();
    run->add_option("--script", script_path, "Command script CSV (time_s,command)");
    run->add_option("--duration", duration, "Simulated seconds")->required()->check(CLI::PositiveNumber);
    run->add_option("--out", out_path, "Trajectory CSV output");
    run_flags.attach(run);

    std::uint16_t port = 8765;
    ChannelFlags serve_flags;
    auto* serve = app.add_subcommand("serve", "Run a live station for TCP clients");
    serve->add_option("--scenario", scenario_path, "Scenario JSON")->required();
    serve->add_option("--port", port, "TCP port")->capture_default_str();
    serve_flags.attach(serve);

    std::string in_path;
    DtmfFlags dtmf_flags;
    auto* dtmf = app.add_subcommand("dtmf", "Encode command lists to WAV or decode WAV to commands");
    dtmf->require_subcommand(1);
    auto* encode = dtmf->add_subcommand("encode", "Command names (one per line) to WAV");
    encode->add_option("--in", in_path, "Command list")->required();
    encode->add_option("--out", out_path, "WAV output")->required();
    dtmf_flags.attach(encode);
    auto* decode = dtmf->add_subcommand("decode", "WAV to command names");
    decode->add_option("--in", in_path, "WAV input")->required();
    decode->add_option("--out", out_path, "Text output (default stdout)");
    dtmf_flags.attach(decode);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        if (*run) return cmd_run(scenario_path, script_path, duration, out_path, run_flags);
        if (*serve) return cmd_serve(scenario_path, port, serve_flags);
        if (*encode) return cmd_dtmf_encode(in_path, out_path, dtmf_flags);
        if (*decode) return cmd_dtmf_decode(in_path, out_path, dtmf_flags);
    } catch (const ugv::EnvironmentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEnvironment;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ugv::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
