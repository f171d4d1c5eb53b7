"""Generate the bundled fixture dataset and validate it through the pipeline.

Writes four files into src/clinicalqa/data/:

    lexicon.tsv        surface form -> canonical phrase + semantic tag
    mini_corpus.jsonl  50 labeled abstracts
    questions.tsv      130 training questions (100 answerable, 30 not)
    gold.tsv           20 planted-answer questions

The corpus is adversarially easy by construction: each gold question's
phrases all occur together in exactly one evidence abstract's answer
sentence, which also carries the question's focus tag, so that abstract must
rank first.  After writing the files the script builds the real pipeline in
build/fixture_check and asserts answerability, focus class, rank 1, and
highlighting for every gold question, plus refusal of patient-specific
questions.  Run from the repository root:

    python3 scripts/build_fixtures.py
"""

from __future__ import annotations

import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / "src" / "clinicalqa" / "data"
CHECK_DIR = ROOT / "build" / "fixture_check"

# ---------------------------------------------------------------------------
# lexicon: (surface, canonical, tag); several surfaces may share a canonical
# ---------------------------------------------------------------------------

LEXICON: list[tuple[str, str, str]] = []


def lex(tag: str, *pairs) -> None:
    for pair in pairs:
        if isinstance(pair, tuple):
            surface, canonical = pair
        else:
            surface = canonical = pair
        LEXICON.append((surface, canonical, tag))


# conditions and diseases
lex("Finding",
    "status epilepticus", "trigeminal neuralgia", "scarlet fever",
    "absence seizures", "lyme disease", "giardiasis", "preeclampsia",
    ("whooping cough", "pertussis"), "pertussis",
    "acute otitis media", "osteoporosis", "hypothyroidism",
    "acne", "bloodstream infection", "plantar fasciitis",
    "diabetic foot ulcer", ("frozen shoulder", "adhesive capsulitis"),
    "adhesive capsulitis", "sciatica", "myopathy", "thyroid dysfunction",
    "migraine", "gout", "community acquired pneumonia",
    "urinary tract infection", "type 2 diabetes", "heart failure",
    "atrial fibrillation", "peptic ulcer disease",
    "gastroesophageal reflux disease", "major depressive disorder",
    "generalized anxiety disorder", "osteoarthritis",
    "chronic obstructive pulmonary disease", "acute bronchitis", "sinusitis",
    "cellulitis", "deep vein thrombosis", "iron deficiency anemia",
    "epilepsy", "parkinson disease", "psoriasis", "eczema",
    "allergic rhinitis", "rheumatoid arthritis", "asthma", "insomnia",
    "tuberculosis", "malaria", "scabies", "impetigo", "trichomoniasis",
    "erythema migrans", "respiratory depression", "tendon rupture",
    "bleeding", "weight gain", "hypoglycemia", "antibiotic resistance")

# symptoms and signs
lex("Sign or Symptom",
    "headache", "nausea", "vomiting", "dizziness", "fatigue", "cough",
    "dry cough", "fever", "ear pain", "muscle pain", "joint pain", "pain",
    "rash", "wheezing", "chest pain", "heel pain", "shoulder pain",
    "leg pain", "back pain", "tremor", "vertigo", "seizure")

# drugs
lex("Pharmacologic Substance",
    "lorazepam", "diazepam", "carbamazepine", "penicillin", "ethosuximide",
    "doxycycline", "metronidazole", "magnesium sulfate", "azithromycin",
    "amoxicillin", "alendronate", "levothyroxine", "isotretinoin",
    "vancomycin", "simvastatin", "enalapril", "amiodarone",
    "ibuprofen", "metformin", "aspirin", "omeprazole", "sertraline",
    "albuterol", "atorvastatin", "lisinopril", "prednisone", "warfarin",
    "amlodipine", "gabapentin", "sumatriptan", "allopurinol",
    "ciprofloxacin", "furosemide", "morphine", "ondansetron", "heparin",
    "insulin", "ceftriaxone", "digoxin", "valproate", "lamotrigine",
    ("drug of choice", "drug of choice"))

# drug-with-form products
lex("Clinical Drug", "low dose aspirin", "combination oral contraceptive")

# quantities
lex("Quantitative Concept", ("dosage", "dose"), "dose", "incidence",
    "prevalence")

# laboratory measurements
lex("Laboratory or Test Results",
    "serum creatinine", "hemoglobin a1c", "thyroid stimulating hormone",
    "international normalized ratio", "trough concentration", "lipid panel",
    "liver function tests", "bone mineral density", "blood pressure",
    "uric acid", "blood glucose")

# treatments and procedures
lex("Therapeutic or Preventive Procedure",
    "treatment", "management", "therapy", "physical therapy",
    "stretching exercises", "exercise therapy", "debridement",
    "cognitive behavioral therapy", "radiotherapy", "dialysis",
    "immunization", "surgery", "angioplasty", "corticosteroid injection",
    "epidural steroid injection", "wound care", "splinting")

# diagnostic procedures
lex("Diagnostic Procedure",
    "magnetic resonance imaging", "colonoscopy", "biopsy",
    "echocardiography", "electroencephalography", "radiography",
    "nerve conduction study", "endoscopy")

# qualities
lex("Qualitative Concept",
    "adverse effect", "side effect", "risk", "safety", "efficacy",
    "tolerability", "effectiveness", "severity")

# study designs and research activity
lex("Research Activity",
    "randomized controlled trial", "clinical trial", "cohort study",
    ("case-control study", "case-control study"),
    ("case control study", "case-control study"),
    ("cross-sectional study", "cross-sectional study"),
    ("cross sectional study", "cross-sectional study"),
    "registry", "epidemiology", "gene expression profiling")

# publications and intellectual artifacts
lex("Intellectual Product",
    "systematic review", ("meta-analysis", "meta-analysis"),
    ("meta analysis", "meta-analysis"), "guideline", "questionnaire")

# molecular biology
lex("Gene or Genome", "k-ras oncogene", ("k-ras", "kras"), "kras",
    "tumor suppressor genes", "gene")
lex("Genetic Function", "mutation", "signaling pathway")
lex("Enzyme", "cre recombinase")
lex("Amino Acid, Peptide, or Protein", "insulin receptor", "cytokine")
lex("Cell Component", "mitochondria")
lex("Tissue", "epithelium", "stem cell", "cartilage")
lex("Neoplastic Process",
    "pancreatic ductal adenocarcinoma", "pancreatic cancer",
    "pancreatic neoplasm", "pancreatic intraepithelial neoplasia",
    "breast cancer", "colorectal cancer")
lex("Research Device", "mouse model")
lex("Mammal", ("mice", "mouse"), "mouse")
lex("Molecular Biology Research Technique", "polymerase chain reaction",
    "western blot")

# anatomy
lex("Body Part, Organ, or Organ Component",
    "liver", "kidney", "heart", "lung", "pancreas", "stomach",
    "thyroid gland", "spine", "tendon")
lex("Body Location or Region", "shoulder", "knee", "heel", "abdomen")
lex("Anatomical Structure", "ductal epithelium")
lex("Organism Function", "sleep", "digestion", "carcinogenesis")
lex("Temporal Concept", "long term", ("follow-up", "follow-up"),
    ("follow up", "follow-up"), "duration")
lex("Geographic Area", "united states")
lex("Occupation or Discipline", "primary care", "cardiology",
    "pathophysiology")
lex("Idea or Concept", "quality of life", "microbiome", "cost")
lex("Functional Concept", "mechanism")
lex("Spatial Concept", "proximal", "distal")
lex("Medical Device", "stent", "inhaler", "insulin pump")
lex("Mental Process", "cognition", "memory")
lex("Event", "hospitalization", "relapse")
lex("Social Behavior", "smoking", "adherence")
lex("Finding", "biomarker", "obesity")

# ---------------------------------------------------------------------------
# corpus: (doc_id, label, title, [sentences])
# ---------------------------------------------------------------------------

Doc = tuple[str, str, str, list[str]]

GOLD_DOCS: list[Doc] = [
    ("20010001", "intervention",
     "Lorazepam versus diazepam for the initial management of status epilepticus in adults.",
     ["Status epilepticus is a neurologic emergency, and mortality rises steeply once seizures persist beyond thirty minutes.",
      "We conducted a randomized controlled trial comparing intravenous lorazepam with diazepam in 264 adults presenting with convulsive status epilepticus.",
      "Seizure control within ten minutes was achieved in 78 percent of the lorazepam group and 64 percent of the diazepam group.",
      "Respiratory depression was uncommon and did not differ between groups.",
      "Intravenous lorazepam remains the drug of choice for status epilepticus in adults."]),
    ("20010002", "intervention",
     "Carbamazepine for trigeminal neuralgia: a double blind randomized controlled trial.",
     ["Trigeminal neuralgia produces brief paroxysms of severe facial pain that can be disabling.",
      "In this randomized controlled trial, 118 patients with classical trigeminal neuralgia received carbamazepine or placebo for six weeks.",
      "Carbamazepine reduced the frequency of pain paroxysms by 72 percent relative to placebo.",
      "Dizziness was the most common complaint and led to withdrawal in five patients.",
      "Carbamazepine is the drug of choice for trigeminal neuralgia, providing meaningful relief of pain in most patients."]),
    ("20010003", "intervention",
     "Oral penicillin for scarlet fever in children: a pragmatic randomized trial.",
     ["Scarlet fever has returned to pediatric practice in several regions, and prompt antibiotic therapy shortens illness and limits spread.",
      "We randomized 402 children with confirmed scarlet fever to ten days of oral penicillin or five days of a comparator antibiotic in a clinical trial.",
      "Fever cleared within 48 hours in 91 percent of children receiving penicillin.",
      "No serious adverse effect was recorded in either arm.",
      "Oral penicillin remains the drug of choice for scarlet fever in children."]),
    ("20010004", "intervention",
     "Ethosuximide, valproate, and lamotrigine for childhood absence seizures.",
     ["Absence seizures interrupt awareness many times a day and can impair learning in school age children.",
      "This randomized controlled trial assigned 453 children with newly diagnosed absence seizures to ethosuximide, valproate, or lamotrigine.",
      "Freedom from seizures at sixteen weeks was highest with ethosuximide, and attentional side effect rates were lowest.",
      "Electroencephalography confirmed treatment response in each arm.",
      "Ethosuximide is the drug of choice for uncomplicated absence seizures in school age children."]),
    ("20010005", "intervention",
     "Doxycycline for early lyme disease presenting with erythema migrans.",
     ["Early lyme disease most often declares itself with erythema migrans at the site of a tick bite.",
      "We enrolled 180 adults with early lyme disease in a randomized controlled trial of ten versus twenty days of doxycycline.",
      "Complete resolution of erythema migrans occurred in 94 percent of participants by day 30 in both arms.",
      "Nausea was mild and infrequent.",
      "Oral doxycycline is the drug of choice for early lyme disease in adults and children over eight years."]),
    ("20010006", "intervention",
     "Metronidazole for symptomatic giardiasis: randomized comparison of regimens.",
     ["Giardiasis causes prolonged diarrhea and malabsorption, particularly after travel.",
      "In a randomized controlled trial, 240 patients with stool confirmed giardiasis received metronidazole for three or seven days.",
      "Parasitologic cure was achieved in 89 percent of the three day group and 92 percent of the seven day group.",
      "Metallic taste and nausea were the main complaints.",
      "Metronidazole is the drug of choice for symptomatic giardiasis in both children and adults."]),
    ("20010007", "intervention",
     "Magnesium sulfate for seizure prophylaxis in severe preeclampsia.",
     ["Severe preeclampsia threatens mother and fetus, and eclamptic seizures remain a leading cause of maternal death.",
      "This randomized controlled trial compared magnesium sulfate with placebo infusion in 1,062 women with severe preeclampsia.",
      "Eclamptic seizures occurred in 0.8 percent of women receiving magnesium sulfate versus 2.7 percent with placebo.",
      "Blood pressure control and delivery outcomes were similar between arms.",
      "Magnesium sulfate is the drug of choice for seizure prevention in women with severe preeclampsia."]),
    ("20010008", "intervention",
     "Azithromycin for pertussis: treatment and prophylaxis of close contacts.",
     ["Pertussis continues to circulate despite immunization programs, with prolonged coughing spells in adolescents and adults.",
      "We randomized 310 patients with culture confirmed pertussis and their households to azithromycin or erythromycin in a clinical trial.",
      "Bacterial eradication at day 7 was 97 percent with azithromycin, with better adherence than the comparator.",
      "Vomiting after coughing spells declined in parallel in both arms.",
      "Azithromycin is the drug of choice for pertussis and for post exposure prophylaxis of close contacts."]),
    ("20010009", "intervention",
     "High dose amoxicillin for acute otitis media in young children.",
     ["Acute otitis media is the most frequent reason young children receive antibiotics.",
      "In this randomized controlled trial, 520 children aged 6 to 23 months with acute otitis media received high or standard dose amoxicillin.",
      "The recommended dose of amoxicillin for acute otitis media is 80 to 90 mg per kg per day in two divided doses, continued until ear pain and fever resolve.",
      "Clinical failure at day 10 was less frequent with the higher dose.",
      "Diaper rash and loose stools were the only excess complaints."]),
    ("20010010", "intervention",
     "Weekly alendronate dosing for postmenopausal osteoporosis.",
     ["Osteoporosis weakens trabecular bone and multiplies fracture risk after menopause.",
      "We randomized 1,258 women with osteoporosis to weekly or daily alendronate regimens in a clinical trial.",
      "A weekly alendronate dose of 70 mg improved bone mineral density at the spine by 6.8 percent over two years in women with osteoporosis.",
      "Upper digestive complaints were similar between regimens.",
      "Adherence favored the weekly schedule at every follow-up visit."]),
    ("20010011", "intervention",
     "Levothyroxine replacement dosing in primary hypothyroidism.",
     ["Untreated hypothyroidism produces fatigue, cold intolerance, and slowed cognition.",
      "This randomized controlled trial titrated levothyroxine in 236 adults with newly diagnosed hypothyroidism.",
      "A levothyroxine dose of 1.6 micrograms per kg daily restored thyroid stimulating hormone to the reference range in most adults with hypothyroidism.",
      "Older participants required smaller increments during titration.",
      "Symptom scores for fatigue improved in proportion to hormonal normalization."]),
    ("20010012", "intervention",
     "Cumulative isotretinoin dosing for severe nodular acne.",
     ["Severe nodular acne scars both skin and confidence during adolescence.",
      "We followed 198 patients with severe acne through a randomized controlled trial of two isotretinoin regimens.",
      "Treatment continued to a maximum cumulative dose of 120 to 150 mg per kg of isotretinoin, with liver function tests checked monthly until inflammatory acne resolved.",
      "Relapse within two years occurred in 12 percent of the higher exposure arm versus 26 percent otherwise.",
      "Dryness of the lips was nearly universal but manageable."]),
    ("20010013", "non_intervention",
     "Vancomycin exposure and outcomes in bloodstream infection: a prospective cohort.",
     ["Bloodstream infection caused by resistant gram positive organisms carries high mortality.",
      "In a prospective cohort study of 342 adults with bloodstream infection, vancomycin exposure was measured against clinical outcomes.",
      "An intravenous vancomycin dose of 15 to 20 mg per kg every twelve hours achieved the target trough concentration in adults with bloodstream infection, adjusted according to serum creatinine.",
      "Failure to reach the target trough concentration by 48 hours predicted persistent bacteremia.",
      "Kidney injury was associated with troughs above 20 micrograms per milliliter."]),
    ("20010014", "intervention",
     "Stretching and physical therapy for plantar fasciitis: randomized trial.",
     ["Plantar fasciitis causes stabbing heel pain with the first steps of the morning.",
      "We randomized 214 adults with plantar fasciitis to a supervised program or usual care in a clinical trial.",
      "A structured program of stretching exercises and physical therapy is the preferred treatment for plantar fasciitis.",
      "Heel pain scores fell by half within eight weeks in the supervised group.",
      "Conservative treatment controlled symptoms of plantar fasciitis in 82 percent of participants at one year."]),
    ("20010015", "intervention",
     "Structured management of the diabetic foot ulcer: randomized comparison.",
     ["A diabetic foot ulcer precedes most non traumatic amputations.",
      "This randomized controlled trial enrolled 176 patients with a new diabetic foot ulcer.",
      "Management of a diabetic foot ulcer combines sharp debridement, pressure relief, and moist wound care.",
      "Complete healing at twenty weeks was achieved in 61 percent with structured management of the diabetic foot ulcer versus 42 percent with usual care.",
      "Infection requiring hospitalization was less frequent in the structured arm."]),
    ("20010016", "intervention",
     "Physical therapy for adhesive capsulitis of the shoulder.",
     ["Adhesive capsulitis stiffens the shoulder over months and can take years to thaw untreated.",
      "We conducted a randomized controlled trial of supervised physical therapy versus home instructions in 142 adults with adhesive capsulitis.",
      "Supervised physical therapy with gradual stretching exercises is the mainstay of treatment for adhesive capsulitis.",
      "Shoulder pain and range of motion improved faster with supervision through six months of follow-up.",
      "No participant required surgery during the study, and treatment satisfaction for adhesive capsulitis care was high."]),
    ("20010017", "intervention",
     "Graded exercise therapy for acute sciatica: randomized controlled trial.",
     ["Acute sciatica radiates from the back down the leg and usually settles, but recovery is slow for many.",
      "In this randomized controlled trial, 188 adults with sciatica of under four weeks received graded activity or rest advice.",
      "Early mobilization with graded exercise therapy is the recommended treatment for acute sciatica, reserving epidural steroid injection for refractory leg pain.",
      "Leg pain intensity declined faster in the active arm at every assessment.",
      "Treatment of sciatica with graded activity also shortened time off work."]),
    ("20010018", "non_intervention",
     "Myopathy during high dose simvastatin therapy: a cohort analysis.",
     ["Statin therapy prevents vascular events, but muscle complaints are a frequent reason for stopping.",
      "We followed 12,064 adults taking simvastatin in a prospective cohort study with systematic ascertainment of muscle outcomes.",
      "Myopathy emerged as the principal adverse effect of high dose simvastatin, with an incidence of 0.9 percent over five years.",
      "Risk rose with interacting drugs and with the 80 mg daily exposure.",
      "Creatine kinase monitoring identified most cases before severe weakness developed."]),
    ("20010019", "non_intervention",
     "Cough during enalapril therapy: incidence in a primary care cohort.",
     ["Angiotensin converting enzyme inhibition is a cornerstone of cardiovascular therapy.",
      "This cohort study followed 3,412 primary care patients starting enalapril for two years.",
      "A persistent dry cough was the most frequent adverse effect of enalapril, leading to withdrawal in 12 percent of participants.",
      "The dry cough resolved within four weeks of stopping enalapril in nearly all affected patients.",
      "No relation was found between cough and dose."]),
    ("20010020", "non_intervention",
     "Thyroid dysfunction during long term amiodarone therapy.",
     ["Amiodarone controls refractory arrhythmias but concentrates in tissue and carries organ toxicities.",
      "We analyzed a cohort study of 1,448 patients on long term amiodarone with serial thyroid testing.",
      "Thyroid dysfunction was a common adverse effect of long term amiodarone therapy, occurring in 18 percent of patients.",
      "Thyroid dysfunction presented as either overactivity or underactivity, and onset clustered in the second year of amiodarone exposure.",
      "Routine surveillance every six months detected most cases before symptoms."]),
]

COMPETITOR_DOCS: list[Doc] = [
    ("20020001", "intervention",
     "Lamotrigine versus valproate for maintenance therapy of epilepsy.",
     ["Long term control of epilepsy depends on sustained antiseizure therapy with acceptable tolerability.",
      "We randomized 604 adults with focal epilepsy to lamotrigine or valproate in a clinical trial.",
      "Twelve month retention favored lamotrigine, driven by fewer withdrawals for side effect complaints.",
      "Rash led to discontinuation in 3 percent of lamotrigine treated patients.",
      "Seizure freedom rates were similar between drugs."]),
    ("20020002", "intervention",
     "Sumatriptan for acute migraine attacks: randomized placebo controlled trial.",
     ["Migraine attacks disable more adults of working age than any other neurologic condition.",
      "In this randomized controlled trial, 812 adults treated two migraine attacks with sumatriptan or placebo.",
      "Sumatriptan is widely considered the drug of choice for aborting a severe migraine attack.",
      "Headache relief at two hours was achieved in 62 percent of attacks treated with sumatriptan versus 28 percent with placebo.",
      "Chest pain was reported after 2 percent of treated attacks and was transient."]),
    ("20020003", "intervention",
     "Amlodipine versus lisinopril as initial therapy for hypertension.",
     ["Choice of first antihypertensive agent continues to generate debate in primary care.",
      "We randomized 9,048 adults to amlodipine or lisinopril in a clinical trial with five years of follow-up.",
      "Blood pressure reduction was equivalent, and cardiovascular event rates did not differ.",
      "Ankle edema was more frequent with amlodipine, dry mouth with lisinopril.",
      "Adherence exceeded 80 percent in both arms."]),
    ("20020004", "intervention",
     "Metformin intensification and glycemic control in type 2 diabetes.",
     ["Type 2 diabetes progresses despite lifestyle measures in most patients.",
      "This randomized controlled trial compared early versus stepped metformin intensification in 1,704 adults with type 2 diabetes.",
      "Hemoglobin a1c fell by 1.4 percent with early intensification versus 0.9 percent with stepped care.",
      "Nausea and loose stools were the main complaints on higher metformin exposure.",
      "Hypoglycemia was rare in both arms."]),
    ("20020005", "intervention",
     "Ceftriaxone based therapy for community acquired pneumonia.",
     ["Community acquired pneumonia remains a leading infectious cause of hospitalization.",
      "We randomized 486 inpatients with community acquired pneumonia to ceftriaxone based therapy or comparator in a clinical trial.",
      "Clinical cure at day 14 was 87 percent with ceftriaxone based treatment.",
      "Fever resolved a median of one day sooner in the ceftriaxone arm.",
      "Length of stay and readmission did not differ."]),
    ("20020006", "non_intervention",
     "Serum uric acid and gout flares: a prospective cohort study.",
     ["Gout flares recur unpredictably and are exquisitely painful.",
      "In a cohort study of 2,218 adults with established gout, serum uric acid was measured quarterly.",
      "Uric acid below 6 mg per deciliter predicted an 84 percent reduction in flare frequency.",
      "Allopurinol exposure accounted for most of the variance in uric acid over time.",
      "Joint pain days per year fell in proportion to uric acid control."]),
    ("20020007", "intervention",
     "Sertraline for major depressive disorder in primary care.",
     ["Major depressive disorder is commonly managed in primary care, where brief tools guide therapy.",
      "This randomized controlled trial assigned 710 adults with major depressive disorder to sertraline or placebo.",
      "Remission at twelve weeks occurred in 41 percent with sertraline versus 27 percent with placebo.",
      "Nausea and insomnia were more frequent with sertraline early in treatment.",
      "Quality of life scores improved with remission."]),
    ("20020008", "non_intervention",
     "Exercise patterns and progression of knee osteoarthritis: cohort study.",
     ["Osteoarthritis of the knee restricts mobility in older adults.",
      "We followed 1,522 adults with early knee osteoarthritis in a cohort study with annual radiography.",
      "Moderate regular activity was associated with slower cartilage loss than sedentary behavior.",
      "Knee pain trajectories tracked with body weight across follow-up.",
      "No treatment assignment was made in this observational design."]),
    ("20020009", "non_intervention",
     "Anticoagulation quality and stroke in atrial fibrillation: registry analysis.",
     ["Atrial fibrillation multiplies stroke risk five fold without anticoagulation.",
      "This registry analysis covered 18,442 patients with atrial fibrillation on warfarin.",
      "Time in therapeutic range on the international normalized ratio predicted stroke and bleeding rates.",
      "Centers with pharmacist led dosing kept the international normalized ratio in range longest.",
      "Bleeding requiring hospitalization occurred at 2.1 percent per year."]),
    ("20020010", "non_intervention",
     "Long term omeprazole use in gastroesophageal reflux disease: cohort study.",
     ["Gastroesophageal reflux disease affects a fifth of adults weekly.",
      "We observed 5,810 adults with gastroesophageal reflux disease taking omeprazole in a cohort study.",
      "Symptom control was durable over five years for most participants.",
      "Bone mineral density declined slightly faster among continuous users in subgroup analysis.",
      "Rebound symptoms followed abrupt discontinuation in one of six patients."]),
    ("20020011", "non_intervention",
     "Albuterol reliever use and asthma control: a national registry.",
     ["Asthma control is commonly judged by reliever consumption.",
      "A national registry tracked albuterol dispensing for 64,120 patients with asthma.",
      "Collecting three or more albuterol inhalers per year marked a group with doubled exacerbation risk.",
      "Wheezing and night waking correlated with dispensing counts.",
      "Inhaler technique checks were documented for under half of patients."]),
    ("20020012", "non_intervention",
     "Heparin prophylaxis and deep vein thrombosis after orthopedic surgery: cohort.",
     ["Deep vein thrombosis complicates recovery after major orthopedic operations.",
      "In a multicentre cohort study, 9,604 patients received heparin prophylaxis after surgery.",
      "Symptomatic deep vein thrombosis occurred in 1.1 percent within ninety days.",
      "Bleeding events were concentrated in the first postoperative week.",
      "Early mobilization complemented pharmacologic prophylaxis."]),
]

TABLE_ABSTRACT = (
    "Pancreatic ductal adenocarcinoma is the most common pancreatic neoplasm. "
    "There are approximately 33,000 new cases of pancreatic ductal adenocarcinoma "
    "annually in the United States with approximately the same number of deaths. "
    "Surgery represents the only opportunity for cure, but this is restricted to "
    "early stage pancreatic cancer. Pancreatic ductal adenocarcinoma evolves from "
    "a progressive cascade of cellular, morphological and architectural changes "
    "from normal ductal epithelium through preneoplastic lesions termed pancreatic "
    "intraepithelial neoplasia (PanIN). These PanIN lesions are in turn associated "
    "with somatic alterations in canonical oncogenes and tumor suppressor genes. "
    "Most notably, early PanIN lesions and almost all pancreatic ductal "
    "adenocarcinomas involve mutations in the K-ras oncogene. Thus, it is believed "
    "that activating K-ras mutations are critical for initiation of pancreatic "
    "ductal carcinogenesis. This has been proven through elegant genetically "
    "engineered mouse models in which a Cre-activated K-Ras(G12D) allele is "
    "knocked into the endogenous K-Ras locus and crossed with mice expressing Cre "
    "recombinase in pancreatic tissue. As a result, mechanistic insights are now "
    "possible into how K-Ras contributes to pancreatic ductal carcinogenesis, what "
    "cooperating events are required, and armed with this knowledge, new "
    "therapeutic approaches can be pursued and tested."
)

NON_EVIDENCE_DOCS: list[Doc] = [
    ("16169155", "non_evidence",
     "Mutant KRAS in the initiation of pancreatic cancer.",
     [TABLE_ABSTRACT]),
    ("20030001", "non_evidence",
     "Gene expression profiling in breast cancer subtypes: a review.",
     ["Breast cancer is a family of diseases distinguishable by gene expression profiling.",
      "This review summarizes a decade of molecular classification work.",
      "Luminal, basal, and amplified subtypes differ in outcome and in biology.",
      "Polymerase chain reaction based assays translated these signatures to the clinic.",
      "Open questions include the stability of subtype assignments across a tumor."]),
    ("20030002", "non_evidence",
     "The epidemiology of migraine: a cross-sectional study of prevalence.",
     ["Migraine prevalence varies with age and sex across populations.",
      "We analyzed a cross-sectional study using a validated headache questionnaire in 24,002 adults.",
      "One year prevalence of migraine was 17 percent in women and 6 percent in men.",
      "Headache burden peaked between ages 30 and 45.",
      "These descriptive data carry no information on therapy."]),
    ("20030003", "non_evidence",
     "Airway inflammation in asthma: mechanisms and mediators.",
     ["Asthma narrows airways through smooth muscle contraction and mucosal inflammation.",
      "This review traces cytokine networks in the asthmatic airway.",
      "Epithelium derived signals amplify type 2 inflammation.",
      "The mechanism of airway remodeling remains partly understood.",
      "Biomarker development may allow phenotype directed care."]),
    ("20030004", "non_evidence",
     "The gut microbiome in health and disease: a narrative review.",
     ["The intestinal microbiome participates in digestion, immunity, and drug metabolism.",
      "We review culture independent methods and their findings.",
      "Community composition shifts with diet, antibiotics, and age.",
      "Causal claims require more than cross sectional correlation.",
      "Interventional data remain sparse."]),
    ("20030005", "non_evidence",
     "Reporting quality of meta-analysis in clinical research.",
     ["A meta-analysis synthesizes effect estimates across studies.",
      "We audited 480 published reports against reporting guidelines.",
      "Only 56 percent registered a protocol in advance.",
      "Heterogeneity handling was poorly described in a third of reports.",
      "A systematic review is only as reliable as its weakest included study."]),
    ("20030006", "non_evidence",
     "Insulin receptor signaling: from structure to metabolic control.",
     ["The insulin receptor transduces the defining hormonal signal of the fed state.",
      "This review follows the signaling pathway from receptor binding to glucose transport.",
      "Mutation of key receptor residues uncouples binding from kinase activity.",
      "Mouse models carrying targeted receptor deletions reproduce features of type 2 diabetes.",
      "Mitochondria integrate these signals with cellular energy state."]),
    ("20030007", "non_evidence",
     "Hypertension guidelines: an editorial on shifting thresholds.",
     ["Successive guidelines have moved the blood pressure threshold that defines hypertension.",
      "This editorial weighs the population consequences of each revision.",
      "Labeling millions of adults overnight has costs as well as benefits.",
      "Guideline committees should publish the evidence tables behind each threshold.",
      "Shared decisions matter more than any single cutoff."]),
    ("20030008", "non_evidence",
     "Biomarkers of disease activity in rheumatoid arthritis: a review.",
     ["Rheumatoid arthritis inflames synovial joints and erodes cartilage.",
      "We review each biomarker proposed for disease activity measurement.",
      "Composite scores outperform any single laboratory value.",
      "Cytokine panels remain research tools.",
      "Imaging markers are promising but costly."]),
    ("20030009", "non_evidence",
     "Modeling parkinson disease in mice: strengths and limits.",
     ["Parkinson disease develops over decades, a span no mouse model covers.",
      "This review compares toxin based and genetic mouse models.",
      "Alpha synuclein overexpression reproduces aggregation but not cell loss patterns.",
      "Behavioral assays in mice capture motor but not cognitive features.",
      "Translation from mouse model results to therapy has repeatedly disappointed."]),
    ("20030010", "non_evidence",
     "The economic cost of type 2 diabetes care: a modeling study.",
     ["The cost of caring for type 2 diabetes strains every health system.",
      "We modeled direct and indirect cost under three prevalence scenarios.",
      "Hospitalization for complications dominates expenditure.",
      "Prevention programs break even within nine years in the base case.",
      "Sensitivity analysis varied adherence and screening uptake."]),
    ("20030011", "non_evidence",
     "A short history of antibiotic resistance.",
     ["Antibiotic resistance was described within years of each new drug class.",
      "This review traces resistance genes from soil organisms to hospitals.",
      "Plasmid exchange spreads resistance faster than mutation alone.",
      "Stewardship and surveillance slowed but did not stop the trend.",
      "The pipeline of new classes has thinned since the 1980s."]),
    ("20030012", "non_evidence",
     "Advances in magnetic resonance imaging of the spine.",
     ["Magnetic resonance imaging resolves soft tissue detail unmatched by radiography.",
      "This review covers sequence development for spine imaging.",
      "Diffusion weighted protocols distinguish infection from tumor.",
      "Motion correction now rescues studies once discarded.",
      "Cost and access still limit use as a first test."]),
    ("20030013", "non_evidence",
     "Sleep physiology and memory consolidation: a review.",
     ["Sleep alternates between states that serve distinct functions in memory.",
      "We review the evidence linking slow wave sleep to declarative memory consolidation.",
      "Cognition after sleep deprivation shows selective deficits.",
      "The mechanism likely involves hippocampal replay.",
      "Insomnia research would benefit from objective phenotyping."]),
    ("20030014", "non_evidence",
     "Vaccine platforms and the future of immunization.",
     ["Immunization has prevented more deaths than any other medical technology.",
      "This review compares protein, vector, and nucleic acid vaccine platforms.",
      "Manufacturing speed now rivals immunogenicity as a design goal.",
      "Cold chain requirements shape global deployment.",
      "Platform choice should follow the pathogen's biology."]),
    ("20030015", "non_evidence",
     "Telemedicine in primary care: scope and evidence gaps.",
     ["Telemedicine moved from pilot projects to routine primary care within a few years.",
      "This review maps which visit types transfer well to video.",
      "Prescribing safety data are thin outside a few conditions.",
      "Digital exclusion tracks age and income.",
      "Hybrid models are the likely equilibrium."]),
    ("20030016", "non_evidence",
     "Stem cell approaches to cartilage repair: a review.",
     ["Cartilage heals poorly, motivating stem cell based repair strategies.",
      "We review preclinical and early clinical experience.",
      "Scaffold chemistry guides differentiation as strongly as cell source.",
      "Mouse models overstate repair because defects are small.",
      "Durability beyond five years is unknown."]),
    ("20030017", "non_evidence",
     "The genetics of epilepsy: from families to biology.",
     ["Epilepsy aggregates in families, and gene discovery has accelerated.",
      "This review organizes epilepsy genes by the signaling pathway they disturb.",
      "Ion channel mutations dominate early onset syndromes.",
      "Gene panels now return a finding in a third of severe cases.",
      "Genotype rarely dictates therapy today, but that is changing."]),
]

CORPUS: list[Doc] = GOLD_DOCS + COMPETITOR_DOCS + NON_EVIDENCE_DOCS

# ---------------------------------------------------------------------------
# gold questions: (qid, text, class, doc_id, exact planted sentence)
# ---------------------------------------------------------------------------

GOLD_QUESTIONS: list[tuple[str, str, int, str, str]] = [
    ("q01", "What is the drug of choice for status epilepticus?", 1, "20010001",
     "Intravenous lorazepam remains the drug of choice for status epilepticus in adults."),
    ("q02", "What is the drug of choice for trigeminal neuralgia?", 1, "20010002",
     "Carbamazepine is the drug of choice for trigeminal neuralgia, providing meaningful relief of pain in most patients."),
    ("q03", "What is the drug of choice for scarlet fever?", 1, "20010003",
     "Oral penicillin remains the drug of choice for scarlet fever in children."),
    ("q04", "What is the drug of choice for absence seizures?", 1, "20010004",
     "Ethosuximide is the drug of choice for uncomplicated absence seizures in school age children."),
    ("q05", "What is the drug of choice for early lyme disease?", 1, "20010005",
     "Oral doxycycline is the drug of choice for early lyme disease in adults and children over eight years."),
    ("q06", "What is the drug of choice for giardiasis?", 1, "20010006",
     "Metronidazole is the drug of choice for symptomatic giardiasis in both children and adults."),
    ("q07", "What is the drug of choice for seizure prevention in preeclampsia?", 1, "20010007",
     "Magnesium sulfate is the drug of choice for seizure prevention in women with severe preeclampsia."),
    ("q08", "What is the drug of choice for whooping cough?", 1, "20010008",
     "Azithromycin is the drug of choice for pertussis and for post exposure prophylaxis of close contacts."),
    ("q09", "What is the recommended dosage of amoxicillin for acute otitis media?", 2, "20010009",
     "The recommended dose of amoxicillin for acute otitis media is 80 to 90 mg per kg per day in two divided doses, continued until ear pain and fever resolve."),
    ("q10", "What is the correct dosage of alendronate for osteoporosis?", 2, "20010010",
     "A weekly alendronate dose of 70 mg improved bone mineral density at the spine by 6.8 percent over two years in women with osteoporosis."),
    ("q11", "What is the usual dosage of levothyroxine for hypothyroidism?", 2, "20010011",
     "A levothyroxine dose of 1.6 micrograms per kg daily restored thyroid stimulating hormone to the reference range in most adults with hypothyroidism."),
    ("q12", "What is the maximum dosage of isotretinoin for severe acne?", 2, "20010012",
     "Treatment continued to a maximum cumulative dose of 120 to 150 mg per kg of isotretinoin, with liver function tests checked monthly until inflammatory acne resolved."),
    ("q13", "What is the proper dosage of vancomycin for bloodstream infection?", 2, "20010013",
     "An intravenous vancomycin dose of 15 to 20 mg per kg every twelve hours achieved the target trough concentration in adults with bloodstream infection, adjusted according to serum creatinine."),
    ("q14", "What is the recommended treatment for plantar fasciitis?", 3, "20010014",
     "A structured program of stretching exercises and physical therapy is the preferred treatment for plantar fasciitis."),
    ("q15", "What is the best management of a diabetic foot ulcer?", 3, "20010015",
     "Management of a diabetic foot ulcer combines sharp debridement, pressure relief, and moist wound care."),
    ("q16", "What is the recommended treatment for a frozen shoulder?", 3, "20010016",
     "Supervised physical therapy with gradual stretching exercises is the mainstay of treatment for adhesive capsulitis."),
    ("q17", "What is the recommended treatment for acute sciatica?", 3, "20010017",
     "Early mobilization with graded exercise therapy is the recommended treatment for acute sciatica, reserving epidural steroid injection for refractory leg pain."),
    ("q18", "Can simvastatin cause myopathy?", 4, "20010018",
     "Myopathy emerged as the principal adverse effect of high dose simvastatin, with an incidence of 0.9 percent over five years."),
    ("q19", "Can enalapril cause a persistent dry cough?", 4, "20010019",
     "A persistent dry cough was the most frequent adverse effect of enalapril, leading to withdrawal in 12 percent of participants."),
    ("q20", "Can amiodarone cause thyroid dysfunction?", 4, "20010020",
     "Thyroid dysfunction was a common adverse effect of long term amiodarone therapy, occurring in 18 percent of patients."),
]

# phrases that must occur in exactly one corpus document (the planted one)
GOLD_UNIQUE: dict[str, str] = {
    "status epilepticus": "20010001", "trigeminal neuralgia": "20010002",
    "scarlet fever": "20010003", "absence seizures": "20010004",
    "lyme disease": "20010005", "giardiasis": "20010006",
    "preeclampsia": "20010007", "pertussis": "20010008",
    "amoxicillin": "20010009", "acute otitis media": "20010009",
    "alendronate": "20010010", "osteoporosis": "20010010",
    "levothyroxine": "20010011", "hypothyroidism": "20010011",
    "isotretinoin": "20010012", "acne": "20010012",
    "vancomycin": "20010013", "bloodstream infection": "20010013",
    "plantar fasciitis": "20010014", "diabetic foot ulcer": "20010015",
    "adhesive capsulitis": "20010016", "sciatica": "20010017",
    "simvastatin": "20010018", "myopathy": "20010018",
    "enalapril": "20010019", "dry cough": "20010019",
    "amiodarone": "20010020", "thyroid dysfunction": "20010020",
}

# ---------------------------------------------------------------------------
# training questions
# ---------------------------------------------------------------------------

CLASS1_CONDITIONS = [
    "status epilepticus", "trigeminal neuralgia", "scarlet fever",
    "absence seizures", "lyme disease", "giardiasis", "preeclampsia",
    "whooping cough", "migraine", "gout", "community acquired pneumonia",
    "urinary tract infection", "type 2 diabetes", "heart failure",
    "atrial fibrillation", "peptic ulcer disease",
    "gastroesophageal reflux disease", "major depressive disorder",
    "generalized anxiety disorder", "osteoarthritis",
    "chronic obstructive pulmonary disease", "acute bronchitis", "sinusitis",
    "cellulitis", "deep vein thrombosis", "hypothyroidism",
    "iron deficiency anemia", "epilepsy", "parkinson disease", "psoriasis",
    "eczema", "allergic rhinitis", "rheumatoid arthritis", "asthma",
    "insomnia", "tuberculosis", "malaria", "scabies", "impetigo",
    "trichomoniasis",
]

CLASS2_DRUGS = [
    "amoxicillin", "alendronate", "levothyroxine", "isotretinoin",
    "vancomycin", "ibuprofen", "metformin", "aspirin", "omeprazole",
    "sertraline", "albuterol", "atorvastatin", "lisinopril", "prednisone",
    "warfarin", "amlodipine", "gabapentin", "sumatriptan", "allopurinol",
    "ciprofloxacin", "furosemide", "morphine", "ondansetron", "heparin",
    "insulin", "ceftriaxone", "digoxin", "valproate",
]

CLASS3_CONDITIONS = [
    "plantar fasciitis", "diabetic foot ulcer", "frozen shoulder",
    "sciatica", "migraine", "asthma", "gout", "cellulitis", "psoriasis",
    "eczema", "sinusitis", "osteoarthritis", "peptic ulcer disease",
    "allergic rhinitis", "acute bronchitis", "heart failure",
]

CLASS4_PAIRS = [
    ("simvastatin", "myopathy"), ("enalapril", "dry cough"),
    ("amiodarone", "thyroid dysfunction"), ("aspirin", "bleeding"),
    ("metformin", "nausea"), ("atorvastatin", "muscle pain"),
    ("lisinopril", "dizziness"), ("prednisone", "weight gain"),
    ("albuterol", "tremor"), ("ciprofloxacin", "tendon rupture"),
    ("warfarin", "bleeding"), ("gabapentin", "fatigue"),
    ("sumatriptan", "chest pain"), ("omeprazole", "headache"),
    ("sertraline", "insomnia"), ("morphine", "vomiting"),
]

UNANSWERABLE = [
    "Why does my knee hurt at night when I climb the stairs?",
    "Should my grandmother stop taking aspirin before her dental visit?",
    "My son developed a rash after lunch, what should I do tonight?",
    "Is it safe for me to fly two weeks after my knee surgery?",
    "What should I tell my doctor about my headache diary tomorrow?",
    "Can you recommend a good clinic near my neighborhood?",
    "Why am I always so tired on Monday mornings?",
    "Should I cancel my gym membership while my shoulder heals?",
    "What snacks are good for a road trip with kids?",
    "My father refuses to take his pills, how do I convince him?",
    "Is my cough from the new carpet in our office?",
    "Which pharmacy near the station stays open late?",
    "Why does my daughter get dizziness on long car rides?",
    "Should I worry that my neighbor's dog scratched me last year?",
    "How can I get my toddler to sleep through the night?",
    "Is the fatigue I feel after lunch normal for my age?",
    "What exercise can I do in a hotel room without equipment?",
    "My mother thinks her fever is from the weather, is she right?",
    "Should I take vitamins my coworker recommended to me?",
    "Why does airplane food always upset my stomach?",
    "Can I return my blood pressure monitor without the receipt?",
    "What tea is best for a cozy winter evening?",
    "Why did my insurance reject the claim for my inhaler?",
    "Is it rude to ask my doctor for a second opinion?",
    "My knee brace squeaks when I walk, can I oil it?",
    "What should I pack for my hospital stay next week?",
    "How early should I arrive for a morning blood draw?",
    "Why is the waiting room always cold at my clinic?",
    "Should I text my doctor about my insomnia or call the desk?",
    "What music helps people relax before surgery?",
]


def build_training_questions() -> list[tuple[str, int, int | None]]:
    rows: list[tuple[str, int, int | None]] = []
    for i, cond in enumerate(CLASS1_CONDITIONS):
        if i % 2 == 0:
            text = f"What is the drug of choice for {cond}?"
        else:
            text = f"Which drug is the drug of choice for {cond}?"
        rows.append((text, 1, 1))
    for i, drug in enumerate(CLASS2_DRUGS):
        if i % 2 == 0:
            text = f"What is the recommended dosage of {drug}?"
        else:
            cond = CLASS1_CONDITIONS[i % len(CLASS1_CONDITIONS)]
            text = f"What is the usual dose of {drug} for {cond}?"
        rows.append((text, 1, 2))
    for i, cond in enumerate(CLASS3_CONDITIONS):
        if i % 2 == 0:
            text = f"What is the recommended treatment for {cond}?"
        else:
            text = f"What is the best management of {cond}?"
        rows.append((text, 1, 3))
    for drug, finding in CLASS4_PAIRS:
        rows.append((f"Can {drug} cause {finding}?", 1, 4))
    for text in UNANSWERABLE:
        rows.append((text, 0, None))
    return rows


# ---------------------------------------------------------------------------
# file emission
# ---------------------------------------------------------------------------


def write_lexicon() -> None:
    lines = ["# surface form\tcanonical phrase\tsemantic tag"]
    for surface, canonical, tag in LEXICON:
        lines.append(f"{surface}\t{canonical}\t{tag}")
    (DATA_DIR / "lexicon.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_corpus() -> None:
    import json

    lines = []
    for doc_id, label, title, sentences in CORPUS:
        record = {"id": doc_id, "title": title, "abstract": " ".join(sentences),
                  "label": label}
        lines.append(json.dumps(record, ensure_ascii=False))
    (DATA_DIR / "mini_corpus.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_questions() -> None:
    lines = ["# question_text\tanswerable\tclass"]
    for text, answerable, cls in build_training_questions():
        lines.append(f"{text}\t{answerable}\t{cls if cls is not None else '-'}")
    (DATA_DIR / "questions.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_gold() -> None:
    from clinicalqa.corpus import parse_corpus

    docs = {d.doc_id: d for d in parse_corpus(DATA_DIR / "mini_corpus.jsonl")}
    lines = ["# question_id\tquestion_text\tdoc_id\tsentence_index"]
    for qid, text, _cls, doc_id, planted in GOLD_QUESTIONS:
        doc = docs[doc_id]
        matches = [s.index for s in doc.sentences if s.text == planted]
        if len(matches) != 1:
            raise SystemExit(f"{qid}: planted sentence not found exactly once in {doc_id}; "
                             f"segmentation gave {[s.text for s in doc.sentences]}")
        lines.append(f"{qid}\t{text}\t{doc_id}\t{matches[0]}")
    (DATA_DIR / "gold.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# validation through the real pipeline
# ---------------------------------------------------------------------------


def validate() -> None:
    from clinicalqa import conceptmap, evalkit
    from clinicalqa.config import PipelineConfig
    from clinicalqa.corpus import parse_corpus
    from clinicalqa.pipeline import build_all

    lexicon = conceptmap.load_lexicon(DATA_DIR / "lexicon.tsv")
    docs = parse_corpus(DATA_DIR / "mini_corpus.jsonl")
    print(f"lexicon entries: {len(lexicon)}")
    print(f"corpus: {len(docs)} docs")

    # every doc must map to at least one phrase
    mappings = {d.doc_id: conceptmap.map_document(d, lexicon) for d in docs}
    empty = [doc_id for doc_id, m in mappings.items() if not m.phrases]
    assert not empty, f"docs with no mapped phrases: {empty}"

    # gold-unique phrases occur only in their planted doc
    for phrase, owner in GOLD_UNIQUE.items():
        holders = [doc_id for doc_id, m in mappings.items() if phrase in m.phrases]
        assert holders == [owner], f"{phrase!r} should be unique to {owner}, found in {holders}"

    # planted sentences must cover their question's phrases and focus tag
    from clinicalqa.question import FOCUS_CLASSES
    for qid, text, cls, doc_id, planted in GOLD_QUESTIONS:
        q_phrases = set(conceptmap.map_text(text, lexicon).phrases)
        assert q_phrases, f"{qid}: question maps to no phrases"
        doc = next(d for d in docs if d.doc_id == doc_id)
        sentence = next(s for s in doc.sentences if s.text == planted)
        s_mapping = conceptmap.map_sentence_tokens(sentence.tokens, lexicon)
        missing = q_phrases - set(s_mapping.phrases)
        assert not missing, f"{qid}: planted sentence lacks {missing}"
        focus = {t.casefold() for t in FOCUS_CLASSES[cls].canonical_tags()}
        tags = {t.casefold() for t in s_mapping.tags}
        assert focus & tags, f"{qid}: planted sentence lacks a class-{cls} focus tag"

    if CHECK_DIR.exists():
        shutil.rmtree(CHECK_DIR)
    config = PipelineConfig(
        corpus=DATA_DIR / "mini_corpus.jsonl",
        lexicon=DATA_DIR / "lexicon.tsv",
        questions=DATA_DIR / "questions.tsv",
        gold=DATA_DIR / "gold.tsv",
        workdir=CHECK_DIR,
    )
    pipe = build_all(config)
    evidence = pipe.retrieval_bundle.phrase.n_docs
    print(f"evidence docs: {evidence}")
    assert evidence == sum(1 for _, label, _, _ in CORPUS if label != "non_evidence")

    print(f"doc vocab: {pipe.retrieval_bundle.phrase.n_terms} phrases, "
          f"{pipe.retrieval_bundle.tag.n_terms} tags")
    print(f"question vocab (gate): {len(pipe.gate.vocabulary.phrases)} phrases, "
          f"{len(pipe.gate.vocabulary.tags)} tags")

    failures = []
    for qid, text, cls, doc_id, planted in GOLD_QUESTIONS:
        payload = pipe.ask(text)
        if not payload["answerable"]:
            failures.append(f"{qid}: refused ({payload['reason']})")
            continue
        if payload["class_number"] != cls:
            failures.append(f"{qid}: class {payload['class_number']} != {cls}")
            continue
        results = payload["results"]
        if not results or results[0]["doc_id"] != doc_id:
            got = results[0]["doc_id"] if results else "nothing"
            failures.append(f"{qid}: rank 1 is {got}, wanted {doc_id}")
            continue
        if len(results) > 1:
            margin = results[0]["abstract_score"] - results[1]["abstract_score"]
            if margin < 0.3:
                failures.append(f"{qid}: weak margin {margin:.3f} over {results[1]['doc_id']}")
        top = results[0]
        gold_doc = next(d for d in docs if d.doc_id == doc_id)
        planted_index = next(s.index for s in gold_doc.sentences if s.text == planted)
        highlighted = [s["index"] for s in top["sentences"] if s["highlighted"]]
        if planted_index not in highlighted:
            failures.append(f"{qid}: planted sentence {planted_index} not highlighted "
                            f"(highlighted: {highlighted})")
    for text in UNANSWERABLE[:10]:
        payload = pipe.ask(text)
        if payload["answerable"]:
            failures.append(f"refusal expected: {text!r}")
    if failures:
        print("\n".join(failures))
        raise SystemExit(f"{len(failures)} fixture validation failures")

    gold = evalkit.parse_gold(DATA_DIR / "gold.tsv")
    report = pipe.evaluate(gold)
    print(f"gold MRR: {report.mrr}")
    assert report.mrr == 1.0, f"expected MRR 1.0, got {report.mrr}"
    print("fixture validation passed")


def main() -> None:
    write_lexicon()
    write_corpus()
    write_questions()
    write_gold()
    validate()


if __name__ == "__main__":
    sys.exit(main())
