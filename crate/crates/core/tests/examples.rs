//! Runs every example so they stay in sync with the library.

macro_rules! run_examples {
    ($($name:ident => $path:literal),* $(,)?) => {
        $(
            #[path = $path]
            mod $name;

            #[test]
            fn $name() {
                $name::main();
            }
        )*
    };
}

run_examples!(
    construct_families => "../examples/construct_families.rs",
    verify_array => "../examples/verify_array.rs",
    delivery_trace => "../examples/delivery_trace.rs",
    memory_sharing => "../examples/memory_sharing.rs",
    compare_baselines => "../examples/compare_baselines.rs",
    enumerate_schemes => "../examples/enumerate_schemes.rs",
);
