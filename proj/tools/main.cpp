// Command-line front end: ingest -> scan -> forecast -> diagnose -> report,
// plus the seal/verify commitment tools.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "lppl/config.hpp"
#include "lppl/errors.hpp"
#include "lppl/sealing.hpp"

namespace fs = std::filesystem;
using namespace lppl;

namespace {

// Distinct exit codes for scriptability.
enum ExitCode {
    kOk = 0,
    kFailure = 1,
    kIngestError = 2,
    kNoQualifiedFits = 3,
    kEmptyEnsemble = 4,
    kVerificationMismatch = 5,
    kEvaluationRangeError = 6,
};

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value
    std::string data_path;
    std::string asset_id;
    std::string preset;
    std::string output_dir;
    int threads = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key = value configuration file");
    cmd->add_option("--set", args.overrides,
                    "override any config key, e.g. --set grid.dt1=5")
        ->take_all();
    cmd->add_option("--data", args.data_path, "price CSV path");
    cmd->add_option("--asset", args.asset_id, "asset label for reports");
    cmd->add_option("--preset", args.preset, "ingestion preset (default|yahoo)");
    cmd->add_option("--out", args.output_dir, "output directory");
    cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)");
}

RunConfig resolve_config(const CommonArgs& args) {
    RunConfig cfg;
    if (!args.config_path.empty()) apply_settings(cfg, parse_config_file(args.config_path));
    for (const auto& kv : args.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error("--set expects key=value, got '" + kv + "'");
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!args.preset.empty()) apply_setting(cfg, "data.preset", args.preset);
    if (!args.data_path.empty()) cfg.data_path = args.data_path;
    if (!args.asset_id.empty()) cfg.asset_id = args.asset_id;
    if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
    if (args.threads >= 0) cfg.search.threads = args.threads;
    return cfg;
}

PriceSeries load_data(const RunConfig& cfg) {
    if (cfg.data_path.empty()) throw IngestError("no data path given (--data or data.path)");
    return load_csv(cfg.data_path, cfg.csv, cfg.asset_id);
}

void write_text(const fs::path& path, const std::string& body) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << body;
}

fs::path out_path(const RunConfig& cfg, const std::string& suffix) {
    std::string stem = cfg.asset_id;
    for (auto& ch : stem) {
        if (ch == '/' || ch == '\\' || ch == '^' || ch == ' ') ch = '_';
    }
    return fs::path(cfg.output_dir) / (stem + suffix);
}

int cmd_ingest(const CommonArgs& args) {
    RunConfig cfg = resolve_config(args);
    PriceSeries series = load_data(cfg);
    write_csv(series, out_path(cfg, "_canonical.csv").string());
    Json summary{{"asset_id", cfg.asset_id},
                 {"source", series.source()},
                 {"n_obs", series.size()},
                 {"first_date", series.first_date().iso()},
                 {"last_date", series.last_date().iso()},
                 {"peak_date", series.peak_date().iso()},
                 {"format", to_json(cfg.csv)}};
    write_text(out_path(cfg, "_ingest.json"), summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    return kOk;
}

int run_scan(const RunConfig& cfg, const PriceSeries& series, ScanResult& result) {
    result = scan(series, cfg.grid, cfg.search, cfg.filter);
    write_text(out_path(cfg, "_scan.json"), to_json(result).dump(2) + "\n");
    write_text(out_path(cfg, "_fits.csv"), scan_to_csv(result));
    return kOk;
}

int cmd_scan(const CommonArgs& args) {
    RunConfig cfg = resolve_config(args);
    PriceSeries series = load_data(cfg);
    ScanResult result;
    run_scan(cfg, series, result);
    std::cout << "tested " << result.n_tested << " windows, " << result.n_found
              << " qualified\n";
    return kOk;
}

int cmd_forecast(const CommonArgs& args, bool seed_given, std::uint64_t seed) {
    RunConfig cfg = resolve_config(args);
    if (seed_given) {
        cfg.seed = seed;
        cfg.bootstrap.rng_seed = seed;
    }
    if (!cfg.seed) throw Error("forecast requires --seed (or seed in the config)");

    PriceSeries series = load_data(cfg);
    ScanResult result;
    run_scan(cfg, series, result);
    if (result.n_found == 0) {
        throw NoQualifiedFitsError("no bubble diagnosed: 0 of " +
                                   std::to_string(result.n_tested) +
                                   " windows qualified");
    }
    Ensemble ensemble = ensemble_tc(result, series, cfg.bootstrap, cfg.search, cfg.filter);
    ForecastQuantiles q = quantiles(ensemble.tcs, result.last_obs_date);
    ForecastDocument doc =
        build_forecast_document(to_inputs(cfg, series), result, ensemble, q);
    doc.inputs.bootstrap.rng_seed = *cfg.seed;

    write_text(out_path(cfg, "_forecast.json"), forecast_to_json(doc).dump(2) + "\n");
    write_text(out_path(cfg, "_forecast.md"), forecast_to_markdown(doc));
    std::cout << quantile_rows(q);
    return kOk;
}

int cmd_diagnose(const CommonArgs& args, const std::string& forecast_path,
                 int index_step) {
    RunConfig cfg = resolve_config(args);
    PriceSeries series = load_data(cfg);

    std::ifstream in(forecast_path);
    if (!in) throw Error("cannot open forecast document " + forecast_path);
    Json doc = Json::parse(in);
    ForecastQuantiles q = quantiles_from_json(doc);

    EvaluationOptions options;
    options.index_step_days = index_step;
    EvaluationReport report =
        build_evaluation(series, q, options, cfg.grid, cfg.search, cfg.filter);

    write_text(out_path(cfg, "_evaluation.json"), evaluation_to_json(report).dump(2) + "\n");
    write_text(out_path(cfg, "_evaluation.md"), evaluation_to_markdown(report));

    ReturnSeries rets = returns(series);
    for (int window : {30, 60, 90}) {
        MetricSeries m = updays_fraction(rets, window);
        auto base = out_path(cfg, "_updays" + std::to_string(window));
        write_text(base.string() + ".csv", metric_to_csv(m));
        write_text(base.string() + ".json", metric_sidecar(m).dump(2) + "\n");
    }
    for (int window : {120, 180}) {
        if (static_cast<int>(series.size()) < window + 1) continue;
        MetricSeries m = sg_derivative(series, {window, 3, true});
        auto base = out_path(cfg, "_growth" + std::to_string(m.window));
        write_text(base.string() + ".csv", metric_to_csv(m));
        write_text(base.string() + ".json", metric_sidecar(m).dump(2) + "\n");
    }
    if (!report.index_series.empty()) {
        MetricSeries idx;
        idx.kind = MetricKind::bubble_index;
        idx.window = index_step;
        idx.entries = report.index_series;
        auto base = out_path(cfg, "_bubble_index");
        write_text(base.string() + ".csv", metric_to_csv(idx));
        write_text(base.string() + ".json", metric_sidecar(idx).dump(2) + "\n");
    }
    std::cout << evaluation_to_markdown(report);
    return kOk;
}

int cmd_report(const std::string& forecast_path) {
    std::ifstream in(forecast_path);
    if (!in) throw Error("cannot open forecast document " + forecast_path);
    Json doc = Json::parse(in);

    ForecastDocument rebuilt;
    rebuilt.inputs.asset_id = doc.at("asset_id").get<std::string>();
    rebuilt.inputs.source = doc.at("data").at("source").get<std::string>();
    rebuilt.inputs.data_path = doc.at("data").value("path", "");
    rebuilt.last_obs = Date::parse(doc.at("results").at("last_observation").get<std::string>());
    rebuilt.peak_date = Date::parse(doc.at("results").at("observed_peak").get<std::string>());
    rebuilt.n_found = doc.at("results").at("intervals_found").get<int>();
    rebuilt.n_tested = doc.at("results").at("intervals_tested").get<int>();
    rebuilt.quantiles = quantiles_from_json(doc);
    rebuilt.n_refit_failed = doc.at("results").at("ensemble").value("refits_failed", 0);
    rebuilt.n_outside_horizon = doc.at("results").at("ensemble").value("outside_horizon", 0);
    std::cout << forecast_to_markdown(rebuilt);
    return kOk;
}

int cmd_seal(const std::string& file, const std::string& ledger_path,
             const std::string& asset, const std::string& date) {
    Ledger ledger;
    if (fs::exists(ledger_path)) ledger = Ledger::load(ledger_path);

    LedgerEntry entry;
    entry.publication_date = date.empty() ? Date::parse("1970-01-01") : Date::parse(date);
    if (date.empty()) {
        const auto now = std::chrono::system_clock::now();
        const auto days = std::chrono::duration_cast<std::chrono::hours>(
                              now.time_since_epoch()).count() / 24;
        entry.publication_date = Date(static_cast<int>(days));
    }
    entry.document_name = fs::path(file).filename().string();
    Digests d = hash_document(file);
    entry.md5 = d.md5;
    entry.sha256 = d.sha256;
    entry.sha512 = d.sha512;
    entry.asset_label = asset;

    ledger.append(entry);
    ledger.save(ledger_path);
    std::cout << entry.publication_date.iso() << "\t" << entry.document_name << "\t"
              << d.md5 << "\n";
    return kOk;
}

int cmd_verify(const std::string& ledger_path, const std::string& dir,
               bool emit_check_files) {
    Ledger ledger = Ledger::load(ledger_path);
    if (emit_check_files) write_check_files(ledger, dir);
    VerificationReport report = verify(ledger, dir);
    for (const auto& e : report.entries) {
        const char* status = e.status == VerifyStatus::ok ? "OK"
                             : e.status == VerifyStatus::missing ? "MISSING"
                                                                 : "MISMATCH";
        std::cout << e.document_name << "\t" << status;
        for (const auto& which : e.mismatched) std::cout << "\t" << which;
        std::cout << "\n";
    }
    std::cout << (report.pass ? "PASS" : "FAIL") << "\n";
    return report.pass ? kOk : kVerificationMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-periodic power law bubble diagnostics and sealed forecasts"};
    app.require_subcommand(1);

    CommonArgs ingest_args, scan_args, forecast_args, diagnose_args;
    add_common(app.add_subcommand("ingest", "load, validate and snapshot a price CSV"),
               ingest_args);
    add_common(app.add_subcommand("scan", "fit the model across the window grid"),
               scan_args);

    auto* forecast = app.add_subcommand("forecast", "scan, bootstrap and publish quantiles");
    add_common(forecast, forecast_args);
    std::uint64_t seed = 0;
    auto* seed_opt = forecast->add_option("--seed", seed, "RNG seed (required)");

    auto* diagnose = app.add_subcommand("diagnose", "post-hoc evaluation of a forecast");
    add_common(diagnose, diagnose_args);
    std::string forecast_doc;
    int index_step = 0;
    diagnose->add_option("--forecast", forecast_doc, "forecast JSON document")->required();
    diagnose->add_option("--index-step", index_step,
                         "proxy bubble-index step in days (0 = skip)");

    auto* report = app.add_subcommand("report", "render a forecast JSON as markdown");
    std::string report_doc;
    report->add_option("--from", report_doc, "forecast JSON document")->required();

    auto* seal = app.add_subcommand("seal", "hash a document into the ledger");
    std::string seal_file, seal_ledger, seal_asset, seal_date;
    seal->add_option("file", seal_file, "document to seal")->required();
    seal->add_option("--ledger", seal_ledger, "ledger path")->required();
    seal->add_option("--asset", seal_asset, "asset label");
    seal->add_option("--date", seal_date, "publication date (default: today)");

    auto* verify_cmd = app.add_subcommand("verify", "re-hash ledgered documents");
    std::string verify_ledger, verify_dir = ".";
    bool emit_check_files = false;
    verify_cmd->add_option("--ledger", verify_ledger, "ledger path")->required();
    verify_cmd->add_option("--dir", verify_dir, "directory with the documents");
    verify_cmd->add_flag("--write-check-files", emit_check_files,
                         "emit coreutils-style md5sums.txt/sha256sums.txt/sha512sums.txt");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("ingest")) return cmd_ingest(ingest_args);
        if (app.got_subcommand("scan")) return cmd_scan(scan_args);
        if (app.got_subcommand("forecast"))
            return cmd_forecast(forecast_args, seed_opt->count() > 0, seed);
        if (app.got_subcommand("diagnose"))
            return cmd_diagnose(diagnose_args, forecast_doc, index_step);
        if (app.got_subcommand("report")) return cmd_report(report_doc);
        if (app.got_subcommand("seal"))
            return cmd_seal(seal_file, seal_ledger, seal_asset, seal_date);
        if (app.got_subcommand("verify"))
            return cmd_verify(verify_ledger, verify_dir, emit_check_files);
    } catch (const IngestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIngestError;
    } catch (const NoQualifiedFitsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNoQualifiedFits;
    } catch (const EmptyEnsembleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kEmptyEnsemble;
    } catch (const EvaluationRangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kEvaluationRangeError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
