//! Every example must run to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
            #[test]
            fn runs() {
                run_example().unwrap();
            }
        }
    };
}

example!(unit_algebra);
example!(table_one);
example!(storage_vs_reuse);
example!(water_breakeven);
example!(transfer_curves);
example!(penalty_policy);
example!(custom_config);
