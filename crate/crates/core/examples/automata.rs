//! Building, determinizing and minimizing automata, and their text form.

use autseq::automata::{Automaton, Dfa, Nfa, NfaTransition};
use autseq::semiring::NatInf;

fn main() -> autseq::Result<()> {
    // words over {0,1} whose second-to-last digit is 1
    let one = NatInf::from(1u64);
    let tr = |from, symbol: u32, to| NfaTransition { from, symbol: Some(symbol), mult: one.clone(), to };
    let nfa = Nfa::new(2, 1, 3, vec![tr(0, 0, 0), tr(0, 1, 0), tr(0, 1, 1), tr(1, 0, 2), tr(1, 1, 2)], vec![0], vec![(2, one.clone())])?;
    let dfa = nfa.determinize()?.minimize();
    println!("determinized and minimized: {} states", dfa.num_states());
    print!("{}", dfa.to_text());

    let text = dfa.to_text();
    match Automaton::parse(&text)? {
        Automaton::Dfa(d) => assert_eq!(d, dfa),
        Automaton::Nfa(_) => unreachable!(),
    }
    println!("finite language: {}", dfa.is_finite());
    println!("shortest accepted word: {}", dfa.shortest_accepted().unwrap());
    let all = Dfa::universal(2, 1)?;
    println!("differs from the universal language at: {}", dfa.counterexample(&all)?.unwrap());
    Ok(())
}
