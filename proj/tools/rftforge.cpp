// rftforge: curate model-sampled math reasoning paths into augmented
// fine-tuning datasets, with evaluation metrics and compute estimators.
//
// Pipeline: synth|files -> verify -> select -> merge -> emit, plus stats,
// majvote, downsample, fit and flops. Intermediate artifacts are plain
// JSONL so every stage can be inspected and diffed. Sample files are
// grouped by question with strictly ascending ids; all stages preserve
// that order, so reruns are byte-identical for any --threads value.

#include "rftforge/aggregate.hpp"
#include "rftforge/calc.hpp"
#include "rftforge/corpus.hpp"
#include "rftforge/errors.hpp"
#include "rftforge/flops.hpp"
#include "rftforge/metrics.hpp"
#include "rftforge/parallel.hpp"
#include "rftforge/select.hpp"
#include "rftforge/synth.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;
using namespace rftforge;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;

constexpr std::size_t batch_records = 8192;
constexpr std::size_t batch_groups = 512;

void log_config(const std::string& command, const ordered_json& config) {
    ordered_json line;
    line["command"] = command;
    line["config"] = config;
    std::cerr << line.dump() << "\n";
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    return in;
}

// Output writer: file when a path is given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::trunc);
            if (!file_) throw Error(Errc::io_error, "cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::map<std::string, Decimal> load_golds(const std::string& questions_path) {
    auto in = open_input(questions_path);
    std::map<std::string, Decimal> golds;
    for (const Question& q : read_questions(in, questions_path)) golds[q.id] = q.gold_answer;
    return golds;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// ---------------- verify ----------------

int cmd_verify(const std::string& questions_path, const std::string& samples_path,
               const std::string& out_path, unsigned threads, const std::string& rel_tol) {
    const auto golds = load_golds(questions_path);
    VerifyOptions opts;
    if (!rel_tol.empty()) opts.rel_tol = Decimal::parse(rel_tol);

    auto in = open_input(samples_path);
    Output out(out_path);

    std::string line;
    std::size_t line_no = 0;
    bool eof = false;
    while (!eof) {
        std::vector<std::pair<std::size_t, std::string>> batch;
        batch.reserve(batch_records);
        while (batch.size() < batch_records) {
            if (!std::getline(in, line)) {
                eof = true;
                break;
            }
            ++line_no;
            if (!line.empty()) batch.emplace_back(line_no, std::move(line));
        }

        std::vector<std::string> rendered(batch.size());
        parallel_for(batch.size(), threads, [&](std::size_t i) {
            SampledPath p;
            try {
                p = parse_sample_record(batch[i].second);
            } catch (const Error& e) {
                throw Error(Errc::data_error, samples_path + ":" +
                                                  std::to_string(batch[i].first) + ": " + e.what());
            }
            auto it = golds.find(p.question_id);
            if (it == golds.end())
                throw Error(Errc::unknown_question,
                            samples_path + ":" + std::to_string(batch[i].first) +
                                ": question \"" + p.question_id + "\" not in base set");
            p.annotations = extract_annotations(p.text);
            verify_path(p, it->second, opts);
            rendered[i] = sample_to_json(p);
        });
        for (const std::string& r : rendered) out.stream() << r << '\n';
    }
    return exit_ok;
}

// ---------------- select ----------------

int cmd_select(const std::string& samples_path, const std::string& out_path,
               std::uint64_t k_limit, unsigned threads) {
    auto in = open_input(samples_path);
    GroupedSampleReader reader(in, samples_path);
    Output out(out_path);

    bool done = false;
    while (!done) {
        std::vector<std::vector<SampledPath>> groups;
        groups.reserve(batch_groups);
        while (groups.size() < batch_groups) {
            auto g = reader.next_group();
            if (g.empty()) {
                done = true;
                break;
            }
            groups.push_back(std::move(g));
        }

        std::vector<std::string> rendered(groups.size());
        parallel_for(groups.size(), threads, [&](std::size_t i) {
            auto& group = groups[i];
            if (k_limit > 0 && group.size() > k_limit) group.resize(k_limit);
            std::vector<SampledPath> correct;
            for (SampledPath& p : group) {
                if (p.verdict == Verdict::unverified)
                    throw Error(Errc::data_error,
                                samples_path + ": record for \"" + p.question_id +
                                    "\" has no verdict; run verify first");
                if (p.verdict != Verdict::correct) continue;
                p.annotations = extract_annotations(p.text);
                correct.push_back(std::move(p));
            }
            std::string lines;
            for (const SampledPath& p : select_diverse(std::move(correct)))
                lines += sample_to_json(p) + "\n";
            rendered[i] = std::move(lines);
        });
        for (const std::string& r : rendered) out.stream() << r;
    }
    return exit_ok;
}

// ---------------- merge ----------------

int cmd_merge(const std::string& questions_path, const std::vector<std::string>& pool_paths,
              const std::string& out_path, unsigned threads) {
    std::set<std::string> base_ids;
    {
        auto in = open_input(questions_path);
        for (const Question& q : read_questions(in, questions_path)) base_ids.insert(q.id);
    }

    struct PoolStream {
        std::string path;
        std::ifstream file;
        std::unique_ptr<GroupedSampleReader> reader;
        std::string model_id; // set from the first record
    };
    std::vector<PoolStream> pools(pool_paths.size());
    for (std::size_t i = 0; i < pool_paths.size(); ++i) {
        pools[i].path = pool_paths[i];
        pools[i].file = open_input(pool_paths[i]);
        pools[i].reader = std::make_unique<GroupedSampleReader>(pools[i].file, pool_paths[i]);
    }

    Output out(out_path);
    for (;;) {
        // Advance all streams in ascending question order.
        std::optional<std::string> next;
        for (auto& pool : pools) {
            const auto q = pool.reader->peek_question();
            if (q && (!next || *q < *next)) next = q;
        }
        if (!next) break;

        // Gather one batch of aligned questions, then merge in parallel.
        std::vector<std::vector<std::pair<std::string, std::vector<SampledPath>>>> batch;
        while (batch.size() < batch_groups) {
            std::optional<std::string> qid;
            for (auto& pool : pools) {
                const auto q = pool.reader->peek_question();
                if (q && (!qid || *q < *qid)) qid = q;
            }
            if (!qid) break;
            if (!base_ids.count(*qid))
                throw Error(Errc::unknown_question, "question \"" + *qid + "\" not in base set");

            std::vector<std::pair<std::string, std::vector<SampledPath>>> per_question;
            for (auto& pool : pools) {
                const auto q = pool.reader->peek_question();
                if (!q || *q != *qid) continue;
                auto group = pool.reader->next_group();
                for (SampledPath& p : group) {
                    if (p.verdict != Verdict::correct)
                        throw Error(Errc::data_error,
                                    pool.path + ": non-Correct record for \"" + p.question_id +
                                        "\"; merge pools must be select output");
                    if (pool.model_id.empty()) pool.model_id = p.model_id;
                    else if (pool.model_id != p.model_id)
                        throw Error(Errc::data_error,
                                    pool.path + ": mixed model ids (" + pool.model_id + ", " +
                                        p.model_id + ") in one pool");
                    p.annotations = extract_annotations(p.text);
                }
                per_question.emplace_back(pool.model_id, std::move(group));
            }
            batch.push_back(std::move(per_question));
        }
        if (batch.empty()) break;

        std::vector<std::string> rendered(batch.size());
        parallel_for(batch.size(), threads, [&](std::size_t i) {
            MergedByQuestion one;
            for (ProvenancedPath& pp : merge_question(batch[i]))
                one[pp.path.question_id].push_back(std::move(pp));
            std::ostringstream lines;
            write_merged(lines, one);
            rendered[i] = lines.str();
        });
        for (const std::string& r : rendered) out.stream() << r;
    }
    return exit_ok;
}

// ---------------- emit ----------------

int cmd_emit(const std::string& questions_path, const std::string& merged_path,
             const std::string& out_path) {
    auto qin = open_input(questions_path);
    auto base = read_questions(qin, questions_path);
    auto min = open_input(merged_path);
    auto merged = read_merged(min, merged_path);
    const auto dataset = build_rft_dataset(std::move(base), std::move(merged));
    Output out(out_path);
    write_rft_dataset(out.stream(), dataset);
    std::cerr << "emitted " << dataset.total_size() << " records ("
              << dataset.original.size() << " gold)\n";
    return exit_ok;
}

// ---------------- stats ----------------

int cmd_stats(const std::string& verified_path, const std::string& merged_path,
              const std::string& out_path) {
    ordered_json report;

    if (!verified_path.empty()) {
        auto in = open_input(verified_path);
        GroupedSampleReader reader(in, verified_path);
        std::uint64_t questions = 0, correct_total = 0, distinct_total = 0;
        std::vector<std::uint64_t> distinct_counts;
        for (;;) {
            auto group = reader.next_group();
            if (group.empty()) break;
            ++questions;
            std::set<std::string> keys;
            std::uint64_t correct = 0;
            for (SampledPath& p : group) {
                if (p.verdict != Verdict::correct) continue;
                ++correct;
                p.annotations = extract_annotations(p.text);
                keys.insert(canonical_key(p));
            }
            correct_total += correct;
            distinct_total += keys.size();
            distinct_counts.push_back(keys.size());
        }
        ordered_json paths;
        paths["questions"] = questions;
        paths["correct_per_question"] =
            questions ? static_cast<double>(correct_total) / questions : 0.0;
        paths["distinct_per_question"] =
            questions ? static_cast<double>(distinct_total) / questions : 0.0;
        report["paths"] = paths;

        const auto hist = process_histogram(distinct_counts);
        ordered_json bins;
        for (const auto& [count, n] : hist.bins) bins[std::to_string(count)] = n;
        ordered_json histogram;
        histogram["bins"] = bins;
        histogram["at_least_10"] = hist.at_least_10;
        report["histogram"] = histogram;
    }

    if (!merged_path.empty()) {
        auto in = open_input(merged_path);
        const auto merged = read_merged(in, merged_path);
        std::uint64_t paths_total = 0;
        for (const auto& [qid, paths] : merged) paths_total += paths.size();
        ordered_json m;
        m["questions"] = merged.size();
        m["distinct_per_question"] =
            merged.empty() ? 0.0 : static_cast<double>(paths_total) / merged.size();
        ordered_json venn;
        for (const auto& [subset, fraction] : venn_partition(merged)) {
            std::string label;
            for (const auto& model : subset) {
                if (!label.empty()) label += "+";
                label += model;
            }
            venn[label] = fraction;
        }
        m["venn"] = venn;
        report["merged"] = m;
    }

    if (verified_path.empty() && merged_path.empty())
        throw Error(Errc::invalid_argument, "stats needs --verified and/or --merged");

    Output out(out_path);
    out.stream() << report.dump(2) << '\n';
    return exit_ok;
}

// ---------------- majvote ----------------

int cmd_majvote(const std::string& questions_path, const std::string& samples_path,
                std::uint64_t k, const std::string& out_path) {
    const auto golds = load_golds(questions_path);

    auto in = open_input(samples_path);
    GroupedSampleReader reader(in, samples_path);
    std::map<std::string, std::vector<std::optional<Decimal>>> answers;
    for (;;) {
        auto group = reader.next_group();
        if (group.empty()) break;
        auto& slots = answers[group.front().question_id];
        for (const SampledPath& p : group) slots.push_back(p.answer);
    }

    const double acc = maj_at_k(answers, k, golds);
    ordered_json report;
    report["k"] = k;
    report["questions"] = golds.size();
    report["accuracy"] = acc;
    Output out(out_path);
    out.stream() << report.dump() << '\n';
    return exit_ok;
}

// ---------------- downsample ----------------

int cmd_downsample(const std::string& questions_path, const std::string& fraction,
                   std::uint64_t seed, const std::string& out_path) {
    auto in = open_input(questions_path);
    const auto questions = read_questions(in, questions_path);
    const auto [num, den] = parse_fraction(fraction);
    const auto slice = downsample(questions, num, den, seed);
    Output out(out_path);
    write_questions(out.stream(), slice.questions);
    std::cerr << "kept " << slice.questions.size() << " of " << questions.size() << "\n";
    return exit_ok;
}

// ---------------- fit ----------------

int cmd_fit(const std::string& points_path, const std::string& out_path) {
    auto in = open_input(points_path);
    std::vector<std::pair<double, double>> points;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(Errc::data_error,
                        points_path + ":" + std::to_string(line_no) + ": expected CSV pair");
        try {
            points.emplace_back(std::stod(line.substr(0, comma)),
                                std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            if (line_no == 1) continue; // header row
            throw Error(Errc::data_error,
                        points_path + ":" + std::to_string(line_no) + ": bad number");
        }
    }
    const auto fit = fit_log_linear(points);
    ordered_json report;
    report["points"] = points.size();
    report["slope_per_doubling"] = fit.slope;
    report["intercept"] = fit.intercept;
    report["r2"] = fit.r2;
    Output out(out_path);
    out.stream() << report.dump() << '\n';
    return exit_ok;
}

// ---------------- flops ----------------

struct ShapeEntry {
    ModelShape shape;
    std::optional<double> pretrain_flops;
};

struct WorkloadEntry {
    WorkloadSpec spec;
    bool inference = false;
};

std::map<std::string, ShapeEntry> builtin_shapes() {
    // Published decoder shapes for the preset model sizes.
    return {
        {"7b", {{32, 4096, std::nullopt}, std::nullopt}},
        {"7b2", {{32, 4096, std::nullopt}, std::nullopt}},
        {"13b", {{40, 5120, std::nullopt}, std::nullopt}},
        {"13b2", {{40, 5120, std::nullopt}, std::nullopt}},
        {"33b", {{60, 6656, std::nullopt}, std::nullopt}},
        {"65b", {{80, 8192, std::nullopt}, std::nullopt}},
        {"70b", {{80, 8192, std::nullopt}, std::nullopt}},
    };
}

std::map<std::string, WorkloadEntry> builtin_workloads() {
    // sft: one pass over the 7,473-question training set, 3 epochs.
    // rft-inference: 100 samples per question over the same set.
    return {
        {"sft", {{66, 130, 7473, 3}, false}},
        {"rft-inference", {{66, 130, 747300, 1}, true}},
    };
}

void load_flops_config(const std::string& path, std::map<std::string, ShapeEntry>& shapes,
                       std::map<std::string, WorkloadEntry>& workloads) {
    auto in = open_input(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(Errc::data_error, path + ": " + e.what());
    }
    for (const auto& [name, s] : j.value("shapes", json::object()).items()) {
        ShapeEntry entry;
        entry.shape.n_layer = s.at("n_layer").get<std::uint64_t>();
        entry.shape.d_model = s.at("d_model").get<std::uint64_t>();
        if (s.contains("n_nonembed")) entry.shape.n_nonembed = s["n_nonembed"].get<double>();
        if (s.contains("pretrain_flops")) entry.pretrain_flops = s["pretrain_flops"].get<double>();
        shapes[name] = entry;
    }
    for (const auto& [name, w] : j.value("workloads", json::object()).items()) {
        WorkloadEntry entry;
        entry.spec.n_q = w.at("n_q").get<std::uint64_t>();
        entry.spec.n_r = w.at("n_r").get<std::uint64_t>();
        entry.spec.n_samples = w.at("samples").get<std::uint64_t>();
        entry.spec.epochs = w.value("epochs", 1);
        entry.inference = w.value("mode", "train") == std::string("inference");
        workloads[name] = entry;
    }
}

std::string sci(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

int cmd_flops(const std::string& shape_name, const std::string& workload_name,
              const std::string& config_path, bool table, bool flat_prefill,
              std::optional<double> throughput, double utilization,
              const std::string& out_path) {
    auto shapes = builtin_shapes();
    auto workloads = builtin_workloads();
    if (!config_path.empty()) load_flops_config(config_path, shapes, workloads);
    Output out(out_path);

    if (table) {
        // One column per shape, rows matching the usual cost breakdown.
        std::vector<std::string> names;
        for (const auto& [name, entry] : shapes) names.push_back(name);
        const auto& sft = workloads.at("sft");
        const auto& inference = workloads.at("rft-inference");
        const bool have_rft = workloads.count("rft") > 0;

        auto row = [&](const std::string& label, auto value) {
            out.stream() << label;
            for (const auto& name : names) out.stream() << '\t' << value(shapes.at(name));
            out.stream() << '\n';
        };
        out.stream() << "metric";
        for (const auto& name : names) out.stream() << '\t' << name;
        out.stream() << '\n';
        row("Pre-train FLOPs", [&](const ShapeEntry& s) {
            return s.pretrain_flops ? sci(*s.pretrain_flops) : std::string("-");
        });
        row("SFT FLOPs",
            [&](const ShapeEntry& s) { return sci(train_flops(s.shape, sft.spec)); });
        row("RFT inference FLOPs", [&](const ShapeEntry& s) {
            return sci(flat_prefill ? inference_flops_flat_prefill(s.shape, inference.spec)
                                    : inference_flops(s.shape, inference.spec));
        });
        row("RFT FLOPs", [&](const ShapeEntry& s) {
            return have_rft ? sci(train_flops(s.shape, workloads.at("rft").spec))
                            : std::string("-");
        });
        return exit_ok;
    }

    auto sit = shapes.find(shape_name);
    if (sit == shapes.end())
        throw Error(Errc::invalid_argument, "unknown shape \"" + shape_name + "\"");
    auto wit = workloads.find(workload_name);
    if (wit == workloads.end())
        throw Error(Errc::invalid_argument, "unknown workload \"" + workload_name + "\"");

    const ModelShape& shape = sit->second.shape;
    const WorkloadSpec& spec = wit->second.spec;
    const double flops = wit->second.inference
                             ? (flat_prefill ? inference_flops_flat_prefill(shape, spec)
                                             : inference_flops(shape, spec))
                             : train_flops(shape, spec);

    ordered_json report;
    report["shape"] = shape_name;
    report["n_layer"] = shape.n_layer;
    report["d_model"] = shape.d_model;
    report["n_nonembed"] = shape.n();
    report["workload"] = workload_name;
    report["mode"] = wit->second.inference ? "inference" : "train";
    report["flops"] = flops;
    if (throughput) report["gpu_hours"] = gpu_hours(flops, *throughput, utilization);
    out.stream() << report.dump() << '\n';
    return exit_ok;
}

// ---------------- synth ----------------

int cmd_synth(const std::string& out_dir, std::uint64_t n_questions, std::uint64_t k,
              double p_correct, double diversity, std::uint64_t seed,
              const std::string& models_csv) {
    SynthConfig cfg;
    cfg.n_questions = n_questions;
    cfg.k = k;
    cfg.p_correct = p_correct;
    cfg.diversity = diversity;
    cfg.seed = seed;
    if (!models_csv.empty()) cfg.model_ids = split_csv(models_csv);

    const auto corpus = gen_corpus(cfg);
    fs::create_directories(out_dir);

    const std::string questions_path = out_dir + "/questions.jsonl";
    {
        Output out(questions_path);
        write_questions(out.stream(), corpus.questions);
    }
    ordered_json files;
    files["questions"] = questions_path;
    ordered_json sample_files;
    for (const auto& [model, samples] : corpus.samples_by_model) {
        const std::string path = out_dir + "/samples_" + model + ".jsonl";
        Output out(path);
        write_samples(out.stream(), samples);
        sample_files[model] = path;
    }
    files["samples"] = sample_files;
    std::cout << files.dump() << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rejection-sampling data curation for math reasoning corpora"};
    app.require_subcommand(1);

    std::string questions, samples, pools_csv, merged, verified, out, points, config;
    std::string fraction = "1", rel_tol, models_csv, shape = "7b", workload = "sft", out_dir = "synth_out";
    std::uint64_t seed = 0, k = 0, n_questions = 100;
    std::optional<unsigned> threads_flag;
    double p_correct = 0.8, diversity = 3.0, utilization = 0.4;
    std::optional<double> throughput;
    bool table = false, flat_prefill = false;

    auto add_threads = [&](CLI::App* cmd) {
        cmd->add_option("--threads", threads_flag,
                        "worker threads (default: RFTFORGE_THREADS or hardware)");
    };

    auto* c_verify = app.add_subcommand("verify", "assign verdicts to sampled paths");
    c_verify->add_option("--questions", questions, "questions JSONL")->required();
    c_verify->add_option("--samples", samples, "samples JSONL")->required();
    c_verify->add_option("--out", out, "output path (default stdout)");
    c_verify->add_option("--tolerance-rel", rel_tol, "relative equation tolerance (default 0.0001)");
    add_threads(c_verify);

    auto* c_select = app.add_subcommand("select", "deduplicate correct paths per question");
    c_select->add_option("--samples", samples, "verified samples JSONL")->required();
    c_select->add_option("--k", k, "use only the first k samples per question");
    c_select->add_option("--out", out, "output path (default stdout)");
    add_threads(c_select);

    auto* c_merge = app.add_subcommand("merge", "combine selected pools from several models");
    c_merge->add_option("--questions", questions, "questions JSONL")->required();
    c_merge->add_option("--pools", pools_csv, "comma-separated pool files, in merge order")
        ->required();
    c_merge->add_option("--out", out, "output path (default stdout)");
    add_threads(c_merge);

    auto* c_emit = app.add_subcommand("emit", "write the augmented dataset");
    c_emit->add_option("--questions", questions, "questions JSONL")->required();
    c_emit->add_option("--merged", merged, "merged pool JSONL")->required();
    c_emit->add_option("--out", out, "output path (default stdout)");

    auto* c_stats = app.add_subcommand("stats", "path statistics, histogram, venn partition");
    c_stats->add_option("--verified", verified, "verified samples JSONL");
    c_stats->add_option("--merged", merged, "merged pool JSONL");
    c_stats->add_option("--out", out, "output path (default stdout)");

    auto* c_majvote = app.add_subcommand("majvote", "majority-vote accuracy over k samples");
    c_majvote->add_option("--questions", questions, "questions JSONL")->required();
    c_majvote->add_option("--samples", samples, "verified samples JSONL")->required();
    c_majvote->add_option("--k", k, "votes per question")->required();
    c_majvote->add_option("--out", out, "output path (default stdout)");

    auto* c_down = app.add_subcommand("downsample", "deterministic fractional subset");
    c_down->add_option("--questions", questions, "questions JSONL")->required();
    c_down->add_option("--fraction", fraction, "fraction in (0,1], e.g. 1/32")->required();
    c_down->add_option("--seed", seed, "sampling seed");
    c_down->add_option("--out", out, "output path (default stdout)");

    auto* c_fit = app.add_subcommand("fit", "log-linear scaling fit over data_amount,acc CSV");
    c_fit->add_option("--points", points, "CSV file: data_amount,acc")->required();
    c_fit->add_option("--out", out, "output path (default stdout)");

    auto* c_flops = app.add_subcommand("flops", "training and sampling cost estimates");
    c_flops->add_option("--shape", shape, "model shape preset or config name");
    c_flops->add_option("--workload", workload, "workload preset or config name");
    c_flops->add_option("--config", config, "shapes+workloads JSON file");
    c_flops->add_flag("--table", table, "print the full shape/cost table");
    c_flops->add_flag("--flat-prefill", flat_prefill,
                      "cost the whole prompt at full context instead of per position");
    c_flops->add_option("--throughput", throughput, "device FLOP/s for GPU-hour conversion");
    c_flops->add_option("--utilization", utilization, "device utilization in (0,1], default 0.4");
    c_flops->add_option("--out", out, "output path (default stdout)");

    auto* c_synth = app.add_subcommand("synth", "generate a synthetic corpus");
    c_synth->add_option("--out-dir", out_dir, "output directory");
    c_synth->add_option("--n-questions", n_questions, "number of questions");
    c_synth->add_option("--k", k, "samples per question per model")->required();
    c_synth->add_option("--p-correct", p_correct, "probability of a correct path");
    c_synth->add_option("--diversity", diversity, "expected distinct processes per model");
    c_synth->add_option("--seed", seed, "generator seed");
    c_synth->add_option("--models", models_csv, "comma-separated model ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    const unsigned threads = resolve_threads(threads_flag);
    try {
        if (*c_verify) {
            log_config("verify", {{"questions", questions}, {"samples", samples}, {"out", out},
                                  {"tolerance_rel", rel_tol.empty() ? "0.0001" : rel_tol},
                                  {"threads", threads}});
            return cmd_verify(questions, samples, out, threads, rel_tol);
        }
        if (*c_select) {
            log_config("select", {{"samples", samples}, {"k", k}, {"out", out}, {"threads", threads}});
            return cmd_select(samples, out, k, threads);
        }
        if (*c_merge) {
            const auto pool_paths = split_csv(pools_csv);
            if (pool_paths.empty()) throw Error(Errc::invalid_argument, "--pools is empty");
            log_config("merge", {{"questions", questions}, {"pools", pool_paths}, {"out", out},
                                 {"threads", threads}});
            return cmd_merge(questions, pool_paths, out, threads);
        }
        if (*c_emit) {
            log_config("emit", {{"questions", questions}, {"merged", merged}, {"out", out}});
            return cmd_emit(questions, merged, out);
        }
        if (*c_stats) {
            log_config("stats", {{"verified", verified}, {"merged", merged}, {"out", out}});
            return cmd_stats(verified, merged, out);
        }
        if (*c_majvote) {
            log_config("majvote",
                       {{"questions", questions}, {"samples", samples}, {"k", k}, {"out", out}});
            return cmd_majvote(questions, samples, k, out);
        }
        if (*c_down) {
            log_config("downsample", {{"questions", questions}, {"fraction", fraction},
                                      {"seed", seed}, {"out", out}});
            return cmd_downsample(questions, fraction, seed, out);
        }
        if (*c_fit) {
            log_config("fit", {{"points", points}, {"out", out}});
            return cmd_fit(points, out);
        }
        if (*c_flops) {
            log_config("flops", {{"shape", shape}, {"workload", workload}, {"config", config},
                                 {"table", table}, {"flat_prefill", flat_prefill},
                                 {"utilization", utilization}});
            return cmd_flops(shape, workload, config, table, flat_prefill, throughput,
                             utilization, out);
        }
        if (*c_synth) {
            log_config("synth", {{"out_dir", out_dir}, {"n_questions", n_questions}, {"k", k},
                                 {"p_correct", p_correct}, {"diversity", diversity},
                                 {"seed", seed}, {"models", models_csv}});
            return cmd_synth(out_dir, n_questions, k, p_correct, diversity, seed, models_csv);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_usage;
}
