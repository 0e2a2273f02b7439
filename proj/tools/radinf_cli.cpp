// Batch experiment runner.  Usage:
//   radinf run <experiment> [--key value ...] [--config file.json]
//              [--out results.json] [--csv table.csv] [--threads N]
// Flags override config-file entries.  Exit codes: 0 all pass flags true,
// 1 experiment failure or failed flags, 2 usage/config errors.

#include <omp.h>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "radinf/experiments.hpp"

namespace {

using radinf::experiments::json;

bool parse_number(const std::string& text, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(text, &used);
        return used == text.size();
    } catch (...) {
        return false;
    }
}

json parse_scalar(const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    double v = 0.0;
    if (parse_number(text, v)) return v;
    // Comma-separated numbers become a list; anything else stays a string
    // (space labels like "lp:p=2,dim=2" contain commas).
    if (text.find(',') != std::string::npos) {
        json list = json::array();
        std::size_t pos = 0;
        bool all_numeric = true;
        while (pos <= text.size()) {
            const auto next = text.find(',', pos);
            const std::string item = text.substr(
                pos, next == std::string::npos ? std::string::npos : next - pos);
            double item_v = 0.0;
            if (parse_number(item, item_v)) list.push_back(item_v);
            else all_numeric = false;
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (all_numeric) return list;
    }
    return text;
}

int usage() {
    std::cerr
        << "usage: radinf run <experiment> [--key value ...] [--config c.json]\n"
        << "                 [--out out.json] [--csv out.csv] [--threads N]\n"
        << "experiments: wiener-gap fm-measure chebyshev p-average atoms-demo\n"
        << "             hilbert-demo cost-model uc-convergence modulus perturbation\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.size() < 2 || args[0] != "run") return usage();

    const std::string experiment = args[1];
    std::string config_path, out_path, csv_path;
    json flags = json::object();
    for (std::size_t i = 2; i < args.size(); ++i) {
        std::string key = args[i];
        if (key.rfind("--", 0) != 0) {
            std::cerr << "unexpected argument: " << key << "\n";
            return usage();
        }
        key = key.substr(2);
        std::string value;
        const auto eq = key.find('=');
        if (eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else {
            if (i + 1 >= args.size()) {
                std::cerr << "flag --" << key << " needs a value\n";
                return usage();
            }
            value = args[++i];
        }
        if (key == "config") config_path = value;
        else if (key == "out") out_path = value;
        else if (key == "csv") csv_path = value;
        else if (key == "threads") omp_set_num_threads(std::stoi(value));
        else flags[key] = parse_scalar(value);
    }

    json config = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config file: " << config_path << "\n";
            return 2;
        }
        try {
            in >> config;
        } catch (const std::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return 2;
        }
        if (!config.is_object()) {
            std::cerr << "config file must hold a JSON object\n";
            return 2;
        }
    }
    for (const auto& [key, value] : flags.items()) config[key] = value;
    config["experiment"] = experiment;

    json doc;
    try {
        doc = radinf::experiments::run_experiment(config);
    } catch (const radinf::experiments::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json diag;
        diag["experiment"] = experiment;
        diag["error"] = e.what();
        std::cerr << diag.dump(2) << "\n";
        return 1;
    }

    const std::string text = doc.dump(2);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        out << text << "\n";
    }
    if (!csv_path.empty()) {
        const std::string table = radinf::experiments::csv_table(doc);
        if (!table.empty()) {
            std::ofstream out(csv_path);
            out << table;
        }
    }
    return radinf::experiments::all_pass(doc) ? 0 : 1;
}
