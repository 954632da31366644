#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bhe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Each command takes the arguments following its subcommand name.
int run_enhance_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_bench_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_metrics_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_gen_corpus_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Dispatches on args[0]: enhance, bench, metrics, gen-corpus.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bhe::cli
