#include "bhe/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

#include "bhe/corpus.hpp"
#include "bhe/error.hpp"
#include "bhe/image_io.hpp"
#include "bhe/kernels.hpp"
#include "bhe/methods.hpp"
#include "bhe/metrics.hpp"
#include "bhe/report.hpp"

namespace bhe::cli {

namespace {

// CLI11 consumes a reversed argument vector.
int parse(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
          bool& done) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        done = true;
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << app.get_name() << ": " << e.what() << '\n' << app.help();
        done = true;
        return kExitUsage;
    }
    done = false;
    return kExitOk;
}

int unknown_method(std::ostream& err, const std::string& name) {
    err << "unknown method '" << name << "'; valid methods: " << method_names() << '\n';
    return kExitUsage;
}

void dump_lut(const TransformLut& lut, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw Error(ErrorCode::io_failure, "cannot open " + path.string() + " for writing");
    f << "input,output\n";
    for (int i = 0; i < kGrayLevels; ++i) f << i << ',' << static_cast<int>(lut.map[i]) << '\n';
    if (!f) throw Error(ErrorCode::io_failure, "write failed for " + path.string());
}

std::optional<std::vector<MethodId>> parse_method_list(const std::string& text, std::string& bad) {
    if (text == "all") return std::vector<MethodId>(kAllMethods.begin(), kAllMethods.end());
    std::vector<bool> chosen(kAllMethods.size(), false);
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto name = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto m = parse_method(name);
        if (!m) {
            bad = name;
            return std::nullopt;
        }
        chosen[static_cast<std::size_t>(*m)] = true;
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    std::vector<MethodId> methods;
    for (auto m : kAllMethods)
        if (chosen[static_cast<std::size_t>(m)]) methods.push_back(m);
    return methods;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::trunc | std::ios::binary);
    if (!f) throw Error(ErrorCode::io_failure, "cannot open " + path.string() + " for writing");
    body(f);
    if (!f) throw Error(ErrorCode::io_failure, "write failed for " + path.string());
}

}  // namespace

int run_enhance_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Enhance one grayscale image", "enhance"};
    std::string method, input, output, lut_path;
    bool metrics = false;
    int eme_block = kDefaultEmeBlock;
    app.add_option("--method", method, "Method name (" + method_names() + ")")->required();
    app.add_option("--input", input, "Input PGM or PNG")->required();
    app.add_option("--output", output, "Output PGM (P5)")->required();
    app.add_option("--dump-lut", lut_path, "Write the 256-entry transform as CSV");
    app.add_flag("--metrics", metrics, "Print quality metrics for (input, output) as CSV");
    app.add_option("--eme-block", eme_block, "EME tile size")->check(CLI::PositiveNumber);

    bool done = false;
    if (const int rc = parse(app, args, out, err, done); done) return rc;

    const auto m = parse_method(method);
    if (!m) return unknown_method(err, method);

    try {
        const GrayImage img = read_image(input);
        const auto result = enhance(img, *m);
        write_image(result.output, output);
        if (!lut_path.empty()) dump_lut(result.lut, lut_path);
        if (metrics) write_metrics_row(out, evaluate(img, result.output, eme_block));
    } catch (const std::exception& e) {
        err << "enhance: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int run_metrics_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Score an enhanced image against its original", "metrics"};
    std::string input, reference;
    int eme_block = kDefaultEmeBlock;
    app.add_option("--input", input, "Enhanced image")->required();
    app.add_option("--reference", reference, "Original image")->required();
    app.add_option("--eme-block", eme_block, "EME tile size")->check(CLI::PositiveNumber);

    bool done = false;
    if (const int rc = parse(app, args, out, err, done); done) return rc;

    try {
        const auto enhanced = read_image(input);
        const auto original = read_image(reference);
        write_metrics_row(out, evaluate(original, enhanced, eme_block));
    } catch (const std::exception& e) {
        err << "metrics: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int run_gen_corpus_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Write a seed-deterministic synthetic corpus as PGM files", "gen-corpus"};
    std::uint64_t seed = 1;
    int count = 0;
    int size = 256;
    std::string dir;
    app.add_option("--seed", seed, "Generator seed");
    app.add_option("--count", count, "Number of images")->required()->check(CLI::NonNegativeNumber);
    app.add_option("--out", dir, "Output directory")->required();
    app.add_option("--size", size, "Image side length")->check(CLI::Range(16, 8192));

    bool done = false;
    if (const int rc = parse(app, args, out, err, done); done) return rc;

    try {
        const auto paths = write_synthetic_corpus(seed, count, dir, size);
        out << "wrote " << paths.size() << " images to " << dir << '\n';
    } catch (const std::exception& e) {
        err << "gen-corpus: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int run_bench_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Run methods over a corpus and write CSV reports", "bench"};
    std::string corpus_text, methods_text = "all", report;
    int eme_block = kDefaultEmeBlock;
    int jobs = 0;
    std::optional<int> min_side, max_side;
    app.add_option("--corpus", corpus_text, "Directory of PGM/PNG files or synthetic:<seed>,<count>")->required();
    app.add_option("--methods", methods_text, "Comma-separated method names or 'all'");
    app.add_option("--report", report, "Main CSV report path")->required();
    app.add_option("--eme-block", eme_block, "EME tile size")->check(CLI::PositiveNumber);
    app.add_option("--jobs", jobs, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    app.add_option("--min-side", min_side, "Skip images whose shorter side is below this");
    app.add_option("--max-side", max_side, "Skip images whose longer side exceeds this");

    bool done = false;
    if (const int rc = parse(app, args, out, err, done); done) return rc;

    std::string bad;
    const auto methods = parse_method_list(methods_text, bad);
    if (!methods) return unknown_method(err, bad);

    std::vector<CorpusEntry> corpus;
    try {
        auto spec = CorpusSpec::parse(corpus_text);
        spec.filter = {min_side, max_side};
        corpus = load_corpus(spec);
    } catch (const std::exception& e) {
        err << "bench: " << e.what() << '\n';
        return kExitFailure;
    }
    if (corpus.empty()) {
        err << "bench: no images found\n";
        return kExitFailure;
    }

    const std::size_t per_image = methods->size();
    std::vector<ReportRow> rows(corpus.size() * per_image);
    const auto task_count = static_cast<std::ptrdiff_t>(rows.size());
    const int threads = jobs > 0 ? jobs : kernels::max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t task = 0; task < task_count; ++task) {
        const auto& entry = corpus[static_cast<std::size_t>(task) / per_image];
        ReportRow& row = rows[task];
        row.image_id = entry.id;
        row.method = (*methods)[static_cast<std::size_t>(task) % per_image];
        if (!entry.image) {
            row.error = entry.error;
            continue;
        }
        try {
            const auto result = enhance(*entry.image, row.method);
            row.thresholds = result.thresholds;
            row.runtime_ms = result.runtime.count();
            row.metrics = evaluate(*entry.image, result.output, eme_block);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    }
    sort_rows(rows);

    try {
        write_file(report, [&](std::ostream& f) { write_report(f, rows); });
        for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
            write_file(pivot_path(report, i), [&](std::ostream& f) { write_pivot(f, rows, *methods, i); });
        }
    } catch (const std::exception& e) {
        err << "bench: " << e.what() << '\n';
        return kExitFailure;
    }

    const auto failed = std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.error.empty(); });
    out << "wrote " << rows.size() << " rows for " << corpus.size() << " images to " << report << '\n';
    if (failed > 0) {
        err << "bench: " << failed << " rows failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    static const char* usage =
        "usage: bhe <command> [options]\n"
        "commands:\n"
        "  enhance     enhance one image with a chosen method\n"
        "  bench       run methods over a corpus and write CSV reports\n"
        "  metrics     score an enhanced image against its original\n"
        "  gen-corpus  write a synthetic test corpus\n";
    if (args.empty()) {
        err << usage;
        return kExitUsage;
    }
    const std::vector<std::string> rest(args.begin() + 1, args.end());
    const auto& cmd = args.front();
    if (cmd == "enhance") return run_enhance_command(rest, out, err);
    if (cmd == "bench") return run_bench_command(rest, out, err);
    if (cmd == "metrics") return run_metrics_command(rest, out, err);
    if (cmd == "gen-corpus") return run_gen_corpus_command(rest, out, err);
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
        out << usage;
        return kExitOk;
    }
    err << "unknown command '" << cmd << "'\n" << usage;
    return kExitUsage;
}

}  // namespace bhe::cli
