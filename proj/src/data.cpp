#include "ppc/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ppc {

namespace {

double parse_cell(const std::string& cell, const std::string& column, std::size_t row) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw DataError("non-numeric cell '" + cell + "' in column '" + column + "', row " +
                        std::to_string(row + 1));
    }
    while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
    if (pos != cell.size())
        throw DataError("non-numeric cell '" + cell + "' in column '" + column + "', row " +
                        std::to_string(row + 1));
    if (!std::isfinite(v))
        throw DataError("non-finite value in column '" + column + "', row " + std::to_string(row + 1));
    return v;
}

// RFC-4180 field splitting with quoted fields; records may span lines inside quotes.
std::vector<std::vector<std::string>> read_csv_records(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool any = false;
    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                break;
            case ',':
                record.push_back(field);
                field.clear();
                any = true;
                break;
            case '\r':
                break;
            case '\n':
                if (any || !field.empty()) {
                    record.push_back(field);
                    records.push_back(std::move(record));
                }
                record.clear();
                field.clear();
                any = false;
                break;
            default:
                field += c;
        }
    }
    if (any || !field.empty()) {
        record.push_back(field);
        records.push_back(std::move(record));
    }
    return records;
}

Table table_from_records(const std::vector<std::vector<std::string>>& records) {
    if (records.empty()) throw DataError("empty input: header row required");
    Table t;
    t.columns = records.front();
    t.data.assign(t.columns.size(), {});
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != t.columns.size())
            throw DataError("row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                            " fields, expected " + std::to_string(t.columns.size()));
        for (std::size_t c = 0; c < rec.size(); ++c)
            t.data[c].push_back(parse_cell(rec[c], t.columns[c], r - 1));
    }
    return t;
}

Table load_json_table(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DataError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_array()) throw DataError("JSON input must be an array of records");
    Table t;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const auto& rec = j[r];
        if (!rec.is_object()) throw DataError("JSON record " + std::to_string(r) + " is not an object");
        if (r == 0) {
            for (auto it = rec.begin(); it != rec.end(); ++it) t.columns.push_back(it.key());
            t.data.assign(t.columns.size(), {});
        }
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (!rec.contains(t.columns[c]))
                throw DataError("missing column '" + t.columns[c] + "' in JSON record " + std::to_string(r));
            const auto& cell = rec[t.columns[c]];
            double v;
            if (cell.is_number()) {
                v = cell.get<double>();
            } else if (cell.is_string()) {
                v = parse_cell(cell.get<std::string>(), t.columns[c], r);
            } else {
                throw DataError("non-numeric cell in column '" + t.columns[c] + "', record " +
                                std::to_string(r));
            }
            if (!std::isfinite(v))
                throw DataError("non-finite value in column '" + t.columns[c] + "', record " +
                                std::to_string(r));
            t.data[c].push_back(v);
        }
    }
    return t;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

const std::vector<double>& Table::column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name) return data[c];
    throw DataError("missing column '" + name + "'");
}

bool Table::has_column(const std::string& name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

Table load_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    if (ends_with(path, ".json")) return load_json_table(in);
    return table_from_records(read_csv_records(in));
}

void write_csv(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    char buf[64];
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", table.data[c][r]);
            out << (c ? "," : "") << buf;
        }
        out << "\n";
    }
}

void ObservationSample::validate() const {
    if (values.empty()) throw DataError("observation sample is empty");
    for (double v : values)
        if (!std::isfinite(v)) throw DataError("observation sample contains a non-finite value");
}

void PredictiveDraws::validate() const {
    if (n_draws == 0 || n_observations == 0) throw DataError("predictive draws are empty");
    if (matrix.size() != n_draws * n_observations) throw DataError("predictive draw matrix shape mismatch");
    for (double v : matrix)
        if (!std::isfinite(v)) throw DataError("predictive draws contain a non-finite value");
}

void BinaryPredictionTable::validate() const {
    if (predicted_prob.empty()) throw DataError("binary prediction table is empty");
    if (outcome.size() != predicted_prob.size())
        throw DataError("outcome length does not match predicted probabilities");
    for (double p : predicted_prob)
        if (!(p >= 0.0 && p <= 1.0)) throw DataError("predicted probability outside [0,1]");
    for (int y : outcome)
        if (y != 0 && y != 1) throw DataError("binary outcome entries must be 0 or 1");
    for (const auto& col : covariates)
        if (col.size() != predicted_prob.size()) throw DataError("covariate length mismatch");
    if (predictive_outcome_draws) {
        predictive_outcome_draws->validate();
        if (predictive_outcome_draws->n_observations != predicted_prob.size())
            throw DataError("predictive outcome draws do not match table length");
        for (double v : predictive_outcome_draws->matrix)
            if (v != 0.0 && v != 1.0) throw DataError("predictive outcome draws must be 0/1");
    }
}

void CategoricalPredictionTable::validate() const {
    if (n_rows == 0 || n_categories < 2) throw DataError("categorical table needs at least two categories");
    if (prob_matrix.size() != n_rows * n_categories) throw DataError("probability matrix shape mismatch");
    if (outcome.size() != n_rows) throw DataError("outcome length does not match probability rows");
    for (std::size_t i = 0; i < n_rows; ++i) {
        double sum = 0.0;
        for (double p : row(i)) {
            if (!(p >= 0.0 && p <= 1.0)) throw DataError("category probability outside [0,1]");
            sum += p;
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            throw DataError("probability row " + std::to_string(i + 1) + " sums to " + std::to_string(sum) +
                            ", not 1");
    }
    for (int y : outcome)
        if (y < 1 || static_cast<std::size_t>(y) > n_categories)
            throw DataError("categorical outcome outside 1..M");
}

void validate_pairing(const ObservationSample& obs, const PredictiveDraws& draws) {
    if (draws.n_observations != obs.size())
        throw DataError("dimension mismatch: sample has " + std::to_string(obs.size()) +
                        " observations, draws have " + std::to_string(draws.n_observations));
}

ObservationSample load_observations(const std::string& path, const std::string& column) {
    const Table t = load_table(path);
    ObservationSample s;
    s.values = t.column(column);
    s.label = column;
    s.validate();
    return s;
}

PredictiveDraws load_draws(const std::string& path) {
    const Table t = load_table(path);
    PredictiveDraws d;
    d.n_observations = t.columns.size();
    d.n_draws = t.rows();
    d.matrix.reserve(d.n_draws * d.n_observations);
    for (std::size_t r = 0; r < d.n_draws; ++r)
        for (std::size_t c = 0; c < d.n_observations; ++c) d.matrix.push_back(t.data[c][r]);
    d.draw_ids.resize(d.n_draws);
    for (std::size_t s = 0; s < d.n_draws; ++s) d.draw_ids[s] = static_cast<long>(s);
    d.validate();
    return d;
}

BinaryPredictionTable load_binary_table(const std::string& path, const std::string& prob_column,
                                        const std::string& outcome_column) {
    const Table t = load_table(path);
    BinaryPredictionTable b;
    b.predicted_prob = t.column(prob_column);
    for (double v : t.column(outcome_column)) {
        if (v != 0.0 && v != 1.0) throw DataError("binary outcome entries must be 0 or 1");
        b.outcome.push_back(static_cast<int>(v));
    }
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (t.columns[c] == prob_column || t.columns[c] == outcome_column) continue;
        b.covariate_names.push_back(t.columns[c]);
        b.covariates.push_back(t.data[c]);
    }
    b.validate();
    return b;
}

CategoricalPredictionTable load_categorical_table(const std::string& path,
                                                  const std::vector<std::string>& prob_columns,
                                                  const std::string& outcome_column, bool ordered) {
    const Table t = load_table(path);
    CategoricalPredictionTable c;
    c.n_categories = prob_columns.size();
    c.n_rows = t.rows();
    c.ordered = ordered;
    for (std::size_t r = 0; r < c.n_rows; ++r)
        for (const auto& name : prob_columns) c.prob_matrix.push_back(t.column(name)[r]);
    for (double v : t.column(outcome_column)) {
        if (v != std::floor(v)) throw DataError("categorical outcome must be an integer");
        c.outcome.push_back(static_cast<int>(v));
    }
    c.validate();
    return c;
}

}  // namespace ppc
