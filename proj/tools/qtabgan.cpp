// Command-line surface: ingest CSV data into a frozen schema + encoded
// bitstrings, train the generator, sample synthetic rows, score them, print
// circuit structure, and sweep the hyperparameter grid.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "qtab/ansatz.hpp"
#include "qtab/encoding.hpp"
#include "qtab/metrics.hpp"
#include "qtab/training.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qtab;

namespace {

constexpr const char* kOutRootEnv = "QTABGAN_OUT_ROOT";

std::string resolve_out(const std::string& out, const std::string& fallback_name) {
    if (!out.empty()) return out;
    if (const char* root = std::getenv(kOutRootEnv)) return (fs::path(root) / fallback_name).string();
    throw ArgumentError("--out not given and " + std::string(kOutRootEnv) + " is not set");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t at = 0;
    while (at <= s.size()) {
        const std::size_t next = s.find(sep, at);
        if (next == std::string::npos) {
            out.push_back(s.substr(at));
            break;
        }
        out.push_back(s.substr(at, next - at));
        at = next + 1;
    }
    return out;
}

int parse_shots(const std::string& s) {
    if (s == "exact") return 0;
    try {
        const int v = std::stoi(s);
        if (v < 1) throw ArgumentError("--shots must be 'exact' or a positive count");
        return v;
    } catch (const std::exception&) {
        throw ArgumentError("--shots must be 'exact' or a positive count");
    }
}

EncodingMode parse_mode_or_throw(const std::string& s) {
    const auto m = parse_mode(s);
    if (!m) throw ArgumentError("unknown --mode '" + s + "' (boolean, non-boolean, unique-row-index)");
    return *m;
}

json config_json(const TrainingConfig& cfg, const SchemaFile& sf, const std::string& schema_path,
                 const std::string& data_path) {
    json j;
    j["schema"] = schema_path;
    j["data"] = data_path;
    j["mode"] = mode_name(sf.mode);
    j["schema_fingerprint"] = schema_hash(sf);
    j["depth"] = cfg.depth;
    j["batch_fraction"] = cfg.batch_fraction;
    j["eta_g"] = cfg.eta_g;
    j["eta_d"] = cfg.eta_d;
    j["epochs"] = cfg.epochs;
    j["disc_steps"] = cfg.disc_steps;
    j["seed"] = cfg.seed;
    j["hidden_width"] = cfg.hidden_width;
    j["shots"] = cfg.shots;
    j["theta_init_range"] = cfg.theta_init_range;
    return j;
}

// ---------------------------------------------------------------- ingest --

struct FeatureDecl {
    std::string name;
    bool numeric = false;
    int qubits = 0;
};

FeatureDecl parse_feature_decl(const std::string& decl) {
    const auto parts = split(decl, ':');
    FeatureDecl f;
    if (parts.size() < 2 || parts[0].empty())
        throw ArgumentError("feature declaration '" + decl + "' is not name:numeric:<qubits> or name:categorical");
    f.name = parts[0];
    if (parts[1] == "numeric") {
        if (parts.size() != 3) throw ArgumentError("numeric feature '" + f.name + "' needs a qubit budget");
        f.numeric = true;
        f.qubits = std::stoi(parts[2]);
    } else if (parts[1] == "categorical") {
        if (parts.size() != 2) throw ArgumentError("categorical feature '" + f.name + "' takes no extra field");
    } else {
        throw ArgumentError("feature '" + f.name + "' has unknown kind '" + parts[1] + "'");
    }
    return f;
}

int cmd_ingest(const std::string& csv_path, const std::vector<std::string>& decls,
               const std::string& mode_str, std::string out_dir) {
    out_dir = resolve_out(out_dir, "ingest");
    const EncodingMode mode = parse_mode_or_throw(mode_str);
    if (decls.empty()) throw ArgumentError("ingest needs at least one --feature declaration");

    const RawTable raw = read_csv(csv_path);
    if (raw.rows.empty()) throw DataError("CSV has no data rows: " + csv_path);

    std::vector<FeatureDecl> features;
    for (const auto& d : decls) features.push_back(parse_feature_decl(d));
    std::vector<int> cols;
    for (const auto& f : features) {
        const int c = raw.column_index(f.name);
        if (c < 0) throw DataError("CSV is missing declared column '" + f.name + "'");
        cols.push_back(c);
    }

    // First pass: parse numerics (tracking dropped rows), collect category
    // vocabularies in sorted order so re-ingestion is byte-stable.
    std::vector<std::vector<double>> numeric_vals(features.size());
    std::vector<std::set<std::string>> vocab(features.size());
    std::vector<std::size_t> dropped;
    std::vector<bool> keep(raw.rows.size(), true);
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        for (std::size_t f = 0; f < features.size(); ++f) {
            const std::string& cell = raw.rows[r][static_cast<std::size_t>(cols[f])];
            if (features[f].numeric) {
                try {
                    std::size_t used = 0;
                    const double v = std::stod(cell, &used);
                    if (used != cell.size()) throw std::invalid_argument(cell);
                    numeric_vals[f].push_back(v);
                } catch (const std::exception&) {
                    keep[r] = false;
                }
            } else {
                vocab[f].insert(cell);
            }
        }
        if (!keep[r]) dropped.push_back(r + 2);  // 1-based with header
    }
    if (dropped.size() == raw.rows.size()) throw DataError("every row failed to parse");

    SchemaFile sf;
    sf.mode = mode;
    for (std::size_t f = 0; f < features.size(); ++f) {
        FeatureSpec spec;
        spec.name = features[f].name;
        if (features[f].numeric) {
            const auto [lo, hi] = std::minmax_element(numeric_vals[f].begin(), numeric_vals[f].end());
            NumericSpec n;
            n.min = *lo;
            n.max = *hi;
            n.qubits = features[f].qubits;
            if (!(n.max > n.min)) n.max = n.min + 1.0;  // constant column still needs a bin width
            spec.kind = n;
        } else {
            CategoricalSpec c;
            c.categories.assign(vocab[f].begin(), vocab[f].end());
            spec.kind = c;
        }
        sf.schema.features.push_back(std::move(spec));
    }
    sf.schema.validate();

    Table typed;
    for (const auto& f : sf.schema.features) typed.columns.push_back(f.name);
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        if (!keep[r]) continue;
        Row row;
        for (std::size_t f = 0; f < features.size(); ++f) {
            const std::string& cell = raw.rows[r][static_cast<std::size_t>(cols[f])];
            if (features[f].numeric)
                row.emplace_back(std::stod(cell));
            else
                row.emplace_back(cell);
        }
        typed.rows.push_back(std::move(row));
    }

    const EncodedDataset ds = encode_table(typed, sf);
    fs::create_directories(out_dir);
    save_schema(sf, (fs::path(out_dir) / "schema.json").string());
    save_encoded(ds, (fs::path(out_dir) / "encoded.json").string());

    const RegisterLayout layout = build_layout(sf.schema, sf.mode);
    std::cout << "ingested " << typed.rows.size() << " rows (" << dropped.size() << " dropped";
    if (!dropped.empty()) {
        std::cout << "; rows";
        for (std::size_t i = 0; i < std::min<std::size_t>(dropped.size(), 8); ++i)
            std::cout << " " << dropped[i];
        if (dropped.size() > 8) std::cout << " ...";
    }
    std::cout << ")\n";
    std::cout << "layout " << layout.register_string() << " (" << layout.total_qubits()
              << " qubits, mode " << mode_name(sf.mode) << ")\n";
    std::cout << "schema:  " << (fs::path(out_dir) / "schema.json").string() << "\n";
    std::cout << "encoded: " << (fs::path(out_dir) / "encoded.json").string() << "\n";
    return 0;
}

// ----------------------------------------------------------------- train --

int run_training(const std::string& schema_path, const std::string& data_path,
                 const std::string& out_dir, const TrainingConfig& cfg,
                 const std::string& resume_path, bool quiet) {
    const SchemaFile sf = load_schema(schema_path);
    const EncodedDataset data = load_encoded(data_path);
    fs::create_directories(out_dir);

    {
        std::ofstream cfg_out(fs::path(out_dir) / "config.json");
        cfg_out << config_json(cfg, sf, schema_path, data_path).dump(2) << "\n";
    }
    save_schema(sf, (fs::path(out_dir) / "schema.json").string());

    Checkpoint resume;
    const Checkpoint* resume_ptr = nullptr;
    std::ios_base::openmode log_mode = std::ios_base::out;
    if (!resume_path.empty()) {
        resume = load_checkpoint(resume_path);
        resume_ptr = &resume;
        log_mode |= std::ios_base::app;
    }

    std::ofstream log(fs::path(out_dir) / "run_log.jsonl", log_mode);
    if (!log) throw DataError("cannot write run log in " + out_dir);
    const auto on_epoch = [&](const EpochRecord& r) {
        json j;
        j["epoch"] = r.epoch;
        j["loss_d"] = r.loss_d;
        j["loss_g"] = r.loss_g;
        j["kl"] = r.kl;
        log << j.dump() << "\n";
        if (!quiet && (r.epoch % 100 == 0 || r.epoch == 1))
            std::cout << "epoch " << r.epoch << "  loss_d " << r.loss_d << "  loss_g " << r.loss_g
                      << "  kl " << r.kl << "\n";
    };

    const Checkpoint ckpt = train(data, sf, cfg, on_epoch, resume_ptr);
    log.flush();
    save_checkpoint(ckpt, (fs::path(out_dir) / "checkpoint.json").string());

    if (ckpt.aborted) {
        std::cerr << "training aborted on a non-finite loss; last good checkpoint written\n";
        return 1;
    }
    if (!quiet)
        std::cout << "done: best kl " << ckpt.best_kl << " at epoch " << ckpt.best_epoch << " of "
                  << ckpt.epoch << "\n";
    return 0;
}

// -------------------------------------------------------------- evaluate --

MetricsReport full_report(const Table& real, const Table& synth, const TabularSchema& schema,
                          bool with_downstream) {
    MetricsReport rep = overall_score(real, synth, schema);
    rep.overlap_fraction = overlap_fraction(binned_view(real, schema), binned_view(synth, schema));
    if (with_downstream) {
        for (const auto& f : schema.features) {
            try {
                rep.downstream[f.name] = downstream_score(real, synth, f.name, schema);
            } catch (const ArgumentError&) {
                // Degenerate target (single class); leave it out of the map.
            }
        }
    }
    return rep;
}

void print_report(const MetricsReport& rep) {
    std::cout.setf(std::ios::fixed);
    std::cout.precision(4);
    std::cout << "column shapes:\n";
    for (const auto& [k, v] : rep.per_column) std::cout << "  " << k << ": " << v << "\n";
    std::cout << "column pairs:\n";
    for (const auto& [k, v] : rep.per_pair) std::cout << "  " << k << ": " << v << "\n";
    std::cout << "s_shape: " << rep.s_shape << "\n";
    if (rep.s_pair) std::cout << "s_pair:  " << *rep.s_pair << "\n";
    std::cout << "overall: " << rep.overall << "\n";
    if (rep.overlap_fraction) std::cout << "overlap fraction: " << *rep.overlap_fraction << "\n";
    for (const auto& [k, v] : rep.downstream) std::cout << "downstream[" << k << "]: " << v << "\n";
    std::cout.unsetf(std::ios::fixed);
}

int cmd_evaluate(const std::string& real_csv, const std::string& synth_csv,
                 const std::string& schema_path, const std::string& out_path, bool no_downstream) {
    const SchemaFile sf = load_schema(schema_path);
    const Table real = typed_table(read_csv(real_csv), sf.schema);
    const Table synth = typed_table(read_csv(synth_csv), sf.schema);
    const MetricsReport rep = full_report(real, synth, sf.schema, !no_downstream);
    print_report(rep);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw DataError("cannot write metrics report: " + out_path);
        out << rep.to_json();
    }
    return 0;
}

// -------------------------------------------------------- inspect-circuit --

int cmd_inspect(const std::string& schema_path, const std::string& mode_str, int depth,
                bool as_json, bool list_gates) {
    SchemaFile sf = load_schema(schema_path);
    if (!mode_str.empty()) sf.mode = parse_mode_or_throw(mode_str);
    const RegisterLayout layout = build_layout(sf.schema, sf.mode);
    const GateCounts gc = gate_counts(layout);
    const CircuitAnsatz circuit = build_circuit(layout, depth);

    if (as_json) {
        json j;
        j["registers"] = layout.register_string();
        j["qubits"] = layout.total_qubits();
        j["mode"] = mode_name(sf.mode);
        j["depth"] = depth;
        j["gate_counts"] = {{"numerical", gc.numerical},
                            {"categorical", gc.categorical},
                            {"cross", gc.cross},
                            {"total", gc.total}};
        j["num_params"] = circuit.num_params;
        json gates = json::array();
        for (const GateSpec& g : circuit.gates) {
            json gj;
            gj["gate"] = gate_name(g.kind);
            json qs = json::array();
            for (int i = 0; i < gate_arity(g.kind); ++i) qs.push_back(g.qubits[static_cast<std::size_t>(i)]);
            gj["qubits"] = qs;
            gj["param"] = g.param_index;
            gates.push_back(gj);
        }
        j["gates"] = gates;
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::cout << "registers: " << layout.register_string() << " (" << layout.total_qubits()
              << " qubits, mode " << mode_name(sf.mode) << ")\n";
    std::cout << "gates per layer: numerical " << gc.numerical << ", categorical";
    if (gc.categorical.empty()) std::cout << " none";
    for (std::size_t i = 0; i < gc.categorical.size(); ++i)
        std::cout << (i ? "+" : " ") << gc.categorical[i];
    std::cout << ", cross " << gc.cross << "\n";
    std::cout << "total gates per layer: " << gc.total << "\n";
    std::cout << "depth: " << depth << "\n";
    std::cout << "trainable parameters: " << circuit.num_params << "\n";
    if (list_gates) {
        std::cout << "gate listing:\n";
        for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
            const GateSpec& g = circuit.gates[i];
            std::cout << "  " << i << ": " << gate_name(g.kind) << " q";
            for (int q = 0; q < gate_arity(g.kind); ++q)
                std::cout << (q ? ",q" : "") << g.qubits[static_cast<std::size_t>(q)];
            if (g.param_index >= 0) std::cout << "  theta[" << g.param_index << "]";
            std::cout << "\n";
        }
    }
    return 0;
}

// ------------------------------------------------------------------ grid --

struct GridCell {
    int depth;
    double batch;
    double eta_g;
    double eta_d;
    std::uint64_t seed;

    std::string name() const {
        std::ostringstream os;
        os << "d" << depth << "_b" << batch << "_g" << eta_g << "_e" << eta_d << "_s" << seed;
        return os.str();
    }
};

int cmd_grid(const std::string& schema_path, const std::string& data_path, std::string out_dir,
             const std::vector<int>& depths, const std::vector<double>& batches,
             const std::vector<double>& etas_g, const std::vector<double>& etas_d,
             const std::vector<std::uint64_t>& seeds, int epochs, int shots, int jobs,
             bool dry_run) {
    std::vector<GridCell> cells;
    for (int d : depths)
        for (double b : batches)
            for (double g : etas_g)
                for (double e : etas_d)
                    for (std::uint64_t s : seeds) cells.push_back({d, b, g, e, s});

    if (dry_run) {
        for (const GridCell& c : cells) std::cout << c.name() << "\n";
        std::cout << cells.size() << " cells\n";
        return 0;
    }

    out_dir = resolve_out(out_dir, "grid");
    const SchemaFile sf = load_schema(schema_path);
    const EncodedDataset data = load_encoded(data_path);
    fs::create_directories(out_dir);

    // The real table, as the generator sees it (bin representatives).
    const RegisterLayout layout = build_layout(sf.schema, sf.mode);
    Table real;
    for (const auto& f : sf.schema.features) real.columns.push_back(f.name);
    for (const std::string& bits : data.rows) real.rows.push_back(decode_bits(bits, sf.schema, layout));

    std::mutex io_mutex;
    std::vector<json> results(cells.size());
    std::atomic<std::size_t> next{0};
    std::atomic<int> failures{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const GridCell& cell = cells[i];
            const std::string cell_dir = (fs::path(out_dir) / cell.name()).string();
            TrainingConfig cfg;
            cfg.depth = cell.depth;
            cfg.batch_fraction = cell.batch;
            cfg.eta_g = cell.eta_g;
            cfg.eta_d = cell.eta_d;
            cfg.epochs = epochs;
            cfg.seed = cell.seed;
            cfg.shots = shots;
            try {
                const int rc = run_training(schema_path, data_path, cell_dir, cfg, "", true);
                if (rc != 0) {
                    ++failures;
                    continue;
                }
                const Checkpoint ckpt = load_checkpoint((fs::path(cell_dir) / "checkpoint.json").string());
                const Table synth = generate(ckpt, static_cast<int>(real.rows.size()), cell.seed);
                write_csv(synth, (fs::path(cell_dir) / "synthetic.csv").string());
                const MetricsReport rep = full_report(real, synth, sf.schema, false);
                {
                    std::ofstream mo(fs::path(cell_dir) / "metrics.json");
                    mo << rep.to_json();
                }
                json line;
                line["cell"] = cell.name();
                line["depth"] = cell.depth;
                line["batch_fraction"] = cell.batch;
                line["eta_g"] = cell.eta_g;
                line["eta_d"] = cell.eta_d;
                line["seed"] = cell.seed;
                line["best_kl"] = ckpt.best_kl;
                line["best_epoch"] = ckpt.best_epoch;
                line["overall"] = rep.overall;
                results[i] = std::move(line);
                std::lock_guard<std::mutex> lk(io_mutex);
                std::cout << cell.name() << "  overall " << rep.overall << "  best_kl "
                          << ckpt.best_kl << "\n";
            } catch (const Error& e) {
                ++failures;
                std::lock_guard<std::mutex> lk(io_mutex);
                std::cerr << cell.name() << " failed: " << e.what() << "\n";
            }
        }
    };

    const int nthreads = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ofstream summary(fs::path(out_dir) / "summary.jsonl");
    for (const json& line : results)
        if (!line.is_null()) summary << line.dump() << "\n";
    std::cout << cells.size() - static_cast<std::size_t>(failures.load()) << "/" << cells.size()
              << " cells completed\n";
    return failures.load() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TabularQGAN: quantum generative model for tabular data"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "freeze a schema from CSV data and encode the rows");
    std::string in_csv, in_mode = "non-boolean", in_out;
    std::vector<std::string> in_features;
    ingest->add_option("--csv", in_csv, "input CSV file")->required();
    ingest->add_option("--feature", in_features,
                       "feature declaration name:numeric:<qubits> or name:categorical (repeatable)")
        ->required();
    ingest->add_option("--mode", in_mode, "encoding mode: boolean | non-boolean | unique-row-index");
    ingest->add_option("--out", in_out, "output directory (default: $" + std::string(kOutRootEnv) + "/ingest)");

    // train
    auto* train_cmd = app.add_subcommand("train", "run the adversarial training loop");
    std::string tr_schema, tr_data, tr_out, tr_shots = "exact", tr_resume;
    TrainingConfig tr_cfg;
    tr_cfg.epochs = 3000;
    train_cmd->add_option("--schema", tr_schema, "schema JSON from ingest")->required();
    train_cmd->add_option("--data", tr_data, "encoded dataset from ingest")->required();
    train_cmd->add_option("--out", tr_out, "run directory");
    train_cmd->add_option("--depth", tr_cfg.depth, "model layer repetitions");
    train_cmd->add_option("--batch-fraction", tr_cfg.batch_fraction, "batch size as a fraction of the training set");
    train_cmd->add_option("--eta-g", tr_cfg.eta_g, "generator learning rate");
    train_cmd->add_option("--eta-d", tr_cfg.eta_d, "discriminator learning rate");
    train_cmd->add_option("--epochs", tr_cfg.epochs, "training epochs");
    train_cmd->add_option("--seed", tr_cfg.seed, "rng seed");
    train_cmd->add_option("--disc-steps", tr_cfg.disc_steps, "discriminator updates per epoch");
    train_cmd->add_option("--hidden-width", tr_cfg.hidden_width,
                          "discriminator hidden width (0 = twice the feature width, floored at 16)");
    train_cmd->add_option("--shots", tr_shots, "'exact' or measurement shots per evaluation");
    train_cmd->add_option("--theta-init-range", tr_cfg.theta_init_range, "uniform init range for generator angles");
    train_cmd->add_option("--resume", tr_resume, "checkpoint to continue from");

    // generate
    auto* gen = app.add_subcommand("generate", "sample synthetic rows from a checkpoint");
    std::string g_ckpt, g_out;
    int g_n = 0;
    std::uint64_t g_seed = 0;
    bool g_final = false;
    gen->add_option("--checkpoint", g_ckpt, "checkpoint JSON")->required();
    gen->add_option("--n", g_n, "number of rows")->required();
    gen->add_option("--seed", g_seed, "sampling seed");
    gen->add_option("--out", g_out, "output CSV")->required();
    gen->add_flag("--final", g_final, "use final-epoch parameters instead of the best-KL ones");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "score synthetic data against real data");
    std::string e_real, e_synth, e_schema, e_out;
    bool e_no_downstream = false;
    ev->add_option("--real", e_real, "real CSV")->required();
    ev->add_option("--synth", e_synth, "synthetic CSV")->required();
    ev->add_option("--schema", e_schema, "schema JSON")->required();
    ev->add_option("--out", e_out, "metrics JSON output path");
    ev->add_flag("--no-downstream", e_no_downstream, "skip the downstream learner comparison");

    // inspect-circuit
    auto* ins = app.add_subcommand("inspect-circuit", "print the generator circuit and gate counts");
    std::string i_schema, i_mode;
    int i_depth = 1;
    bool i_json = false, i_gates = false;
    ins->add_option("--schema", i_schema, "schema JSON")->required();
    ins->add_option("--mode", i_mode, "override the schema's encoding mode");
    ins->add_option("--depth", i_depth, "model layer repetitions");
    ins->add_flag("--json", i_json, "emit JSON instead of text");
    ins->add_flag("--gates", i_gates, "also list every gate");

    // grid
    auto* grid = app.add_subcommand("grid", "run the hyperparameter grid");
    std::string gr_schema, gr_data, gr_out, gr_shots = "exact";
    std::vector<int> gr_depths{1, 2, 3, 4};
    std::vector<double> gr_batches{0.1, 0.2};
    std::vector<double> gr_etas_g{0.05, 0.1, 0.2};
    std::vector<double> gr_etas_d{0.05, 0.1, 0.2};
    std::vector<std::uint64_t> gr_seeds{0, 1, 2, 3, 4};
    int gr_epochs = 3000, gr_jobs = 1;
    bool gr_dry = false;
    grid->add_option("--schema", gr_schema, "schema JSON");
    grid->add_option("--data", gr_data, "encoded dataset");
    grid->add_option("--out", gr_out, "grid root directory");
    grid->add_option("--depths", gr_depths, "circuit depths");
    grid->add_option("--batch-fractions", gr_batches, "batch fractions");
    grid->add_option("--etas-g", gr_etas_g, "generator learning rates");
    grid->add_option("--etas-d", gr_etas_d, "discriminator learning rates");
    grid->add_option("--seeds", gr_seeds, "rng seeds");
    grid->add_option("--epochs", gr_epochs, "epochs per cell");
    grid->add_option("--shots", gr_shots, "'exact' or measurement shots");
    grid->add_option("--jobs", gr_jobs, "worker threads running cells");
    grid->add_flag("--dry-run", gr_dry, "list the cells without running them");

    try {
        app.parse(argc, argv);

        if (*ingest) return cmd_ingest(in_csv, in_features, in_mode, in_out);
        if (*train_cmd) {
            tr_cfg.shots = parse_shots(tr_shots);
            return run_training(tr_schema, tr_data, resolve_out(tr_out, "train"), tr_cfg, tr_resume,
                                false);
        }
        if (*gen) {
            const Checkpoint ckpt = load_checkpoint(g_ckpt);
            const Table synth = generate(ckpt, g_n, g_seed, !g_final);
            write_csv(synth, g_out);
            std::cout << "wrote " << synth.rows.size() << " rows to " << g_out << "\n";
            return 0;
        }
        if (*ev) return cmd_evaluate(e_real, e_synth, e_schema, e_out, e_no_downstream);
        if (*ins) return cmd_inspect(i_schema, i_mode, i_depth, i_json, i_gates);
        if (*grid) {
            if (!gr_dry && (gr_schema.empty() || gr_data.empty()))
                throw ArgumentError("grid needs --schema and --data");
            return cmd_grid(gr_schema, gr_data, gr_out, gr_depths, gr_batches, gr_etas_g, gr_etas_d,
                            gr_seeds, gr_epochs, parse_shots(gr_shots), gr_jobs, gr_dry);
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
