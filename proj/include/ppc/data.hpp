#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppc {

// Raised for anything wrong with the input data itself (as opposed to usage
// errors). The CLI maps this to its data-error exit code.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ObservationSample {
    std::vector<double> values;
    std::string label;

    std::size_t size() const { return values.size(); }
    void validate() const;
};

struct PredictiveDraws {
    // row-major S x N
    std::vector<double> matrix;
    std::size_t n_draws = 0;         // S
    std::size_t n_observations = 0;  // N
    std::vector<long> draw_ids;

    std::span<const double> row(std::size_t s) const {
        return {matrix.data() + s * n_observations, n_observations};
    }
    void validate() const;
};

struct BinaryPredictionTable {
    std::vector<double> predicted_prob;  // in [0,1]
    std::vector<int> outcome;            // {0,1}
    std::vector<std::string> covariate_names;
    std::vector<std::vector<double>> covariates;
    // optional S x N of simulated {0,1} outcomes, row-major
    std::optional<PredictiveDraws> predictive_outcome_draws;

    std::size_t size() const { return predicted_prob.size(); }
    void validate() const;
};

struct CategoricalPredictionTable {
    // row-major N x M
    std::vector<double> prob_matrix;
    std::size_t n_rows = 0;
    std::size_t n_categories = 0;
    std::vector<int> outcome;  // 1..M
    bool ordered = false;

    std::span<const double> row(std::size_t i) const {
        return {prob_matrix.data() + i * n_categories, n_categories};
    }
    void validate() const;
};

void validate_pairing(const ObservationSample& obs, const PredictiveDraws& draws);

// CSV (RFC-4180, header row required) and JSON array-of-records readers.
// Cells are parsed as decimal doubles; non-finite values are rejected.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // column-major

    const std::vector<double>& column(const std::string& name) const;
    bool has_column(const std::string& name) const;
    std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
};

Table load_table(const std::string& path);
void write_csv(const Table& table, const std::string& path);

ObservationSample load_observations(const std::string& path, const std::string& column);
// Draws file: every column is one observation, every row one draw.
PredictiveDraws load_draws(const std::string& path);
BinaryPredictionTable load_binary_table(const std::string& path, const std::string& prob_column,
                                        const std::string& outcome_column);
// Categorical: probability columns given in category order, outcome column in 1..M.
CategoricalPredictionTable load_categorical_table(const std::string& path,
                                                  const std::vector<std::string>& prob_columns,
                                                  const std::string& outcome_column, bool ordered);

}  // namespace ppc
