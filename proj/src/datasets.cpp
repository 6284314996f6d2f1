#include "timelot/datasets.hpp"

namespace timelot {

namespace {

// Choice problems from a two-treatment experiment with 196 subjects; ten
// questions, growth rates in $/wk. Questions 1-3 compare a time lottery with
// its degenerate lottery, questions 4-5 two lotteries of equal expected time.
const std::string kDejarnetteCsv = R"(# unit: $/wk
label,g_ens_i,g_ens_ii,g_time,ratl_pct
Q1 long,10.0,16.0,10.0,65.7
Q1 short,10.0,16.0,10.0,56.0
Q2 long,5.0,6.9,5.0,50.5
Q2 short,5.0,9.0,5.0,55.0
Q3 long,5.0,6.7,5.0,48.6
Q3 short,5.0,6.7,5.0,37.4
Q4 long,8.3,12.5,8.0,64.8
Q4 short,8.3,8.8,8.0,38.5
Q5 long,5.3,11.6,4.3,73.3
Q5 short,3.5,3.0,2.9,52.8
)";

// Six lottery-vs-degenerate cases from a 55-subject study, growth rates in
// NTL/mth; raw expected time and payment amount are published, so the rows
// carry exp_t and dx. Case 1's printed g_time disagrees with dx/exp_t.
const std::string kOnayCsv = R"(# unit: NTL/mth
label,g_ens_i,g_ens_ii,g_time,ratl_pct,exp_t,dx
Case 1,27.8,43.6,27.8,22,9,160
Case 2,15.6,38.2,15.6,9,9,140
Case 3,26.7,87.3,26.7,62,6,160
Case 4,23.3,76.4,23.3,40,6,140
Case 5,80.0,145.5,80.0,75,2,160
Case 6,70.0,127.3,70.0,93,2,140
)";

} // namespace

const std::string& shipped_dataset_csv(Dataset dataset) {
    return dataset == Dataset::dejarnette ? kDejarnetteCsv : kOnayCsv;
}

std::vector<ChoiceProblemRecord> shipped_dataset(Dataset dataset) {
    return load_dataset(shipped_dataset_csv(dataset), DatasetSchema::rates);
}

} // namespace timelot
